import { HttpTransport } from "./protocol.js";
import { EditorStore } from "./store.js";
import { View } from "./view.js";

const store = new EditorStore(new HttpTransport());
new View(document.getElementById("app")!, store);
void store.recheck();
