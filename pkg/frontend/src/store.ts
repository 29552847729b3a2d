/** Editor state and actions.
 *
 * The store never computes logic: every verdict, rendered statement, and
 * file byte it holds came out of a protocol response.  Each successful
 * edit triggers an automatic re-check, so feedback updates without a
 * manual action; while a check is in flight the old verdicts are marked
 * stale.  Responses to superseded checks are discarded.
 */
import {
  PROTOCOL_VERSION,
  ProtocolResponse,
  RequestKind,
  Transport,
} from "./protocol.js";

export type LineKind = "premise" | "assumption" | "conclusion";

export interface LineSnapshot {
  index: number;
  kind: LineKind;
  depth: number;
  statement: string;
  rule: string | null;
  refs: number[];
}

export interface DocumentSnapshot {
  version: number;
  metadata: { title: string; author: string };
  goals: string[];
  lines: LineSnapshot[];
}

export interface Verdict {
  line: number | null;
  status: "valid" | "invalid" | "unchecked";
  code: string | null;
  message: string;
  position: number[] | null;
}

export interface GoalReport {
  statement: string;
  achieved: boolean;
}

export interface InlineError {
  line: number | null;
  message: string;
  position: number | null;
}

export interface EditorState {
  document: DocumentSnapshot;
  verdicts: Verdict[];
  goals: GoalReport[];
  /** false while the shown verdicts belong to an older document revision */
  verdictsFresh: boolean;
  selectedLine: number | null;
  armedRule: string | null;
  armedRefs: number[];
  theme: "light" | "dark";
  zoom: number;
  banner: string | null;
  inlineError: InlineError | null;
  filename: string;
}

export type Edit = Record<string, unknown> & { op: string };

const EMPTY_DOCUMENT: DocumentSnapshot = {
  version: 1,
  metadata: { title: "", author: "" },
  goals: [],
  lines: [],
};

export function initialState(): EditorState {
  return {
    document: EMPTY_DOCUMENT,
    verdicts: [],
    goals: [],
    verdictsFresh: true,
    selectedLine: null,
    armedRule: null,
    armedRefs: [],
    theme: "light",
    zoom: 1,
    banner: null,
    inlineError: null,
    filename: "proof",
  };
}

export class EditorStore {
  state: EditorState = initialState();

  private revision = 0;
  private checkEpoch = 0;
  private listeners: Array<(state: EditorState) => void> = [];

  constructor(private readonly transport: Transport) {}

  subscribe(listener: (state: EditorState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  private patch(changes: Partial<EditorState>): void {
    this.state = { ...this.state, ...changes };
    this.emit();
  }

  private send(kind: RequestKind, payload: Record<string, unknown>) {
    this.revision += 1;
    return this.transport.send({
      protocol: PROTOCOL_VERSION,
      revision: this.revision,
      kind,
      payload,
    });
  }

  private noteError(response: ProtocolResponse, line: number | null): void {
    const { code, message, position } = response.payload;
    if (code === "ParseError" && line !== null) {
      this.patch({
        inlineError: { line, message, position: position ?? null },
      });
    } else {
      this.patch({ banner: `${code}: ${message}` });
    }
  }

  dismissBanner(): void {
    this.patch({ banner: null });
  }

  /** Fetch verdicts for the current document; stale responses are dropped. */
  async recheck(): Promise<void> {
    this.checkEpoch += 1;
    const epoch = this.checkEpoch;
    const response = await this.send("check_proof", {});
    if (epoch !== this.checkEpoch) {
      return; // a newer check superseded this one
    }
    if (response.status === "error") {
      this.noteError(response, null);
      return;
    }
    this.patch({
      verdicts: response.payload.verdicts,
      goals: response.payload.goals,
      verdictsFresh: true,
    });
  }

  /** Apply one edit; on success the document refreshes and a re-check runs. */
  async applyEdit(edit: Edit, errorLine: number | null = null): Promise<boolean> {
    const response = await this.send("apply_edit", { edit });
    if (response.status === "error") {
      this.noteError(response, errorLine);
      return false;
    }
    this.patch({
      document: response.payload.document,
      verdictsFresh: false,
      inlineError: null,
      banner: null,
    });
    await this.recheck();
    return true;
  }

  // -- statement editing ----------------------------------------------------

  editStatement(line: number, text: string): Promise<boolean> {
    return this.applyEdit({ op: "set_formula", line, statement: text }, line);
  }

  addPremise(text: string): Promise<boolean> {
    return this.applyEdit({ op: "add_premise", statement: text });
  }

  addConclusion(text: string): Promise<boolean> {
    return this.applyEdit({ op: "add_conclusion", statement: text });
  }

  deleteLine(line: number): Promise<boolean> {
    return this.applyEdit({ op: "delete_line", line });
  }

  toggleKind(line: number): Promise<boolean> {
    return this.applyEdit({ op: "toggle_kind", line });
  }

  beginSubproof(after: number, text: string): Promise<boolean> {
    return this.applyEdit({ op: "begin_subproof", after, statement: text });
  }

  endSubproof(after: number, text: string): Promise<boolean> {
    return this.applyEdit({ op: "end_subproof", after, statement: text });
  }

  setGoals(statements: string[]): Promise<boolean> {
    return this.applyEdit({ op: "set_goals", statements });
  }

  // -- selection and the rules palette ---------------------------------------

  selectLine(line: number | null): void {
    this.patch({ selectedLine: line, armedRefs: [] });
  }

  /** Click a rule in the palette: it arms and waits for reference clicks. */
  armRule(rule: string | null): void {
    this.patch({ armedRule: rule, armedRefs: [] });
  }

  /** Click a line while a rule is armed: collect it as a reference. */
  armRef(line: number): void {
    if (this.state.armedRule === null) {
      return;
    }
    if (!this.state.armedRefs.includes(line)) {
      this.patch({ armedRefs: [...this.state.armedRefs, line] });
    }
  }

  /** Assign the armed rule and collected references to the selected line. */
  async applyArmedRule(): Promise<boolean> {
    const { selectedLine, armedRule, armedRefs } = this.state;
    if (selectedLine === null || armedRule === null) {
      return false;
    }
    const ok =
      (await this.applyEdit({ op: "set_rule", line: selectedLine, rule: armedRule })) &&
      (await this.applyEdit({ op: "set_refs", line: selectedLine, refs: armedRefs }));
    this.patch({ armedRule: null, armedRefs: [] });
    return ok;
  }

  // -- files ------------------------------------------------------------------

  async openFile(content: string, filename: string): Promise<boolean> {
    const response = await this.send("load_document", { content });
    if (response.status === "error") {
      this.noteError(response, null);
      return false;
    }
    this.patch({
      document: response.payload.document,
      filename: filename.replace(/\.aris\.json$/, ""),
      verdictsFresh: false,
      banner: null,
      inlineError: null,
      selectedLine: null,
    });
    await this.recheck();
    return true;
  }

  async importFile(content: string): Promise<boolean> {
    const response = await this.send("import_document", { content });
    if (response.status === "error") {
      this.noteError(response, null);
      return false;
    }
    this.patch({ document: response.payload.document, verdictsFresh: false });
    await this.recheck();
    return true;
  }

  /** Bytes and filename for a download; the engine guarantees the extension. */
  async saveFile(): Promise<{ filename: string; content: string } | null> {
    const response = await this.send("save_document", { name: this.state.filename });
    if (response.status === "error") {
      this.noteError(response, null);
      return null;
    }
    return response.payload;
  }

  async exportLatex(): Promise<{ filename: string; content: string } | null> {
    const response = await this.send("export_latex", { name: this.state.filename });
    if (response.status === "error") {
      this.noteError(response, null);
      return null;
    }
    return response.payload;
  }

  // -- appearance ---------------------------------------------------------------

  toggleTheme(): void {
    this.patch({ theme: this.state.theme === "light" ? "dark" : "light" });
  }

  setZoom(zoom: number): void {
    this.patch({ zoom: Math.min(3, Math.max(0.5, zoom)) });
  }

  verdictFor(line: number): Verdict | null {
    return this.state.verdicts.find((v) => v.line === line) ?? null;
  }
}
