/** DOM layer: renders EditorState and forwards interactions to the store.
 *
 * Rendering is a pure function of the state; the statement being typed,
 * its caret, and the scroll position survive every refresh.
 */
import { EditorStore, EditorState, LineSnapshot, Verdict } from "./store.js";
import { preserveScroll } from "./scroll.js";
import { RULE_GROUPS, SYMBOLS, insertAtCaret } from "./symbols.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function download(filename: string, content: string): void {
  const blob = new Blob([content], { type: "application/octet-stream" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

export class View {
  private root: HTMLElement;
  private lineList!: HTMLElement;

  constructor(root: HTMLElement, private readonly store: EditorStore) {
    this.root = root;
    this.buildShell();
    store.subscribe((state) => this.render(state));
  }

  private buildShell(): void {
    this.root.innerHTML = `
      <header class="toolbar">
        <strong class="brand">aris</strong>
        <button id="btn-open">Open…</button>
        <button id="btn-import">Import…</button>
        <button id="btn-save">Save</button>
        <button id="btn-latex">LaTeX</button>
        <span class="spacer"></span>
        <button id="btn-zoom-out" title="zoom out">−</button>
        <button id="btn-zoom-in" title="zoom in">+</button>
        <button id="btn-theme" title="toggle dark mode">◐</button>
        <input id="file-input" type="file" accept=".aris.json,.json" hidden>
        <input id="import-input" type="file" accept=".aris.json,.json" hidden>
      </header>
      <div id="banner" class="banner" hidden>
        <span id="banner-text"></span><button id="banner-close">✕</button>
      </div>
      <main class="layout">
        <section class="proof-pane">
          <ol id="lines" class="lines"></ol>
          <div class="adders">
            <input id="new-statement" placeholder="type a statement — e.g. P -> Q">
            <button id="btn-add-premise">add premise</button>
            <button id="btn-add-conclusion">add conclusion</button>
            <button id="btn-assume">assume (subproof)</button>
            <button id="btn-end-subproof">end subproof</button>
          </div>
          <div id="goals" class="goals"></div>
          <div class="goal-edit">
            <input id="goal-input" placeholder="goals, separated by ; ">
            <button id="btn-set-goals">set goals</button>
          </div>
        </section>
        <aside class="side-pane">
          <h3>Rules</h3>
          <div id="palette" class="palette"></div>
          <div id="armed" class="armed"></div>
          <h3>Keyboard</h3>
          <div id="keyboard" class="keyboard"></div>
        </aside>
      </main>`;

    this.lineList = this.root.querySelector("#lines")!;
    this.wireToolbar();
    this.wirePalette();
    this.wireKeyboard();
    this.wireAdders();
  }

  // -- static panes ----------------------------------------------------------

  private wireToolbar(): void {
    const byId = (id: string) => this.root.querySelector<HTMLElement>("#" + id)!;
    const fileInput = byId("file-input") as HTMLInputElement;
    const importInput = byId("import-input") as HTMLInputElement;
    byId("btn-open").onclick = () => fileInput.click();
    byId("btn-import").onclick = () => importInput.click();
    fileInput.onchange = async () => {
      const file = fileInput.files?.[0];
      if (file) {
        await this.store.openFile(await file.text(), file.name);
      }
      fileInput.value = "";
    };
    importInput.onchange = async () => {
      const file = importInput.files?.[0];
      if (file) {
        await this.store.importFile(await file.text());
      }
      importInput.value = "";
    };
    byId("btn-save").onclick = async () => {
      const saved = await this.store.saveFile();
      if (saved) {
        download(saved.filename, saved.content);
      }
    };
    byId("btn-latex").onclick = async () => {
      const exported = await this.store.exportLatex();
      if (exported) {
        download(exported.filename, exported.content);
      }
    };
    byId("btn-theme").onclick = () => this.store.toggleTheme();
    byId("btn-zoom-in").onclick = () => this.store.setZoom(this.store.state.zoom + 0.1);
    byId("btn-zoom-out").onclick = () => this.store.setZoom(this.store.state.zoom - 0.1);
    byId("banner-close").onclick = () => this.store.dismissBanner();
  }

  private wirePalette(): void {
    const palette = this.root.querySelector<HTMLElement>("#palette")!;
    palette.innerHTML = RULE_GROUPS.map(
      (group) => `
        <div class="palette-group">
          <h4>${esc(group.family)}</h4>
          ${group.rules
            .map(
              ([id, label]) =>
                `<button class="rule" data-rule="${id}">${esc(label)}</button>`
            )
            .join("")}
        </div>`
    ).join("");
    palette.addEventListener("click", (event) => {
      const target = (event.target as HTMLElement).closest<HTMLElement>("[data-rule]");
      if (target) {
        this.store.armRule(target.dataset.rule!);
      }
    });
    this.root.querySelector<HTMLElement>("#armed")!.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      if (target.id === "btn-apply-rule") {
        void this.store.applyArmedRule();
      } else if (target.id === "btn-cancel-rule") {
        this.store.armRule(null);
      }
    });
  }

  private wireKeyboard(): void {
    const keyboard = this.root.querySelector<HTMLElement>("#keyboard")!;
    keyboard.innerHTML = SYMBOLS.map(
      (s) => `<button class="sym" data-sym="${s}">${s}</button>`
    ).join("");
    keyboard.addEventListener("mousedown", (event) => {
      // mousedown, not click: the statement input must keep focus
      const target = (event.target as HTMLElement).closest<HTMLElement>("[data-sym]");
      if (!target) {
        return;
      }
      event.preventDefault();
      const active = document.activeElement;
      if (active instanceof HTMLInputElement && active.dataset.caretTarget) {
        const caret = active.selectionStart ?? active.value.length;
        const next = insertAtCaret(active.value, caret, target.dataset.sym!);
        active.value = next.text;
        active.setSelectionRange(next.caret, next.caret);
      }
    });
  }

  private wireAdders(): void {
    const byId = (id: string) => this.root.querySelector<HTMLElement>("#" + id)!;
    const statement = byId("new-statement") as HTMLInputElement;
    statement.dataset.caretTarget = "1";
    const lastLine = () => this.store.state.document.lines.length;
    byId("btn-add-premise").onclick = () => void this.store.addPremise(statement.value);
    byId("btn-add-conclusion").onclick = () =>
      void this.store.addConclusion(statement.value);
    byId("btn-assume").onclick = () =>
      void this.store.beginSubproof(lastLine(), statement.value);
    byId("btn-end-subproof").onclick = () =>
      void this.store.endSubproof(lastLine(), statement.value);
    const goalInput = byId("goal-input") as HTMLInputElement;
    goalInput.dataset.caretTarget = "1";
    byId("btn-set-goals").onclick = () =>
      void this.store.setGoals(
        goalInput.value.split(";").map((s) => s.trim()).filter(Boolean)
      );
  }

  // -- dynamic rendering -------------------------------------------------------

  render(state: EditorState): void {
    document.documentElement.dataset.theme = state.theme;
    const banner = this.root.querySelector<HTMLElement>("#banner")!;
    banner.hidden = state.banner === null;
    this.root.querySelector("#banner-text")!.textContent = state.banner ?? "";

    const pane = this.root.querySelector<HTMLElement>(".proof-pane")!;
    pane.style.fontSize = `${state.zoom}em`;

    const focused = document.activeElement;
    let restore: { line: string; caret: number } | null = null;
    if (
      focused instanceof HTMLInputElement &&
      focused.dataset.line &&
      this.lineList.contains(focused)
    ) {
      restore = { line: focused.dataset.line, caret: focused.selectionStart ?? 0 };
    }

    preserveScroll(this.lineList, () => {
      this.lineList.innerHTML = state.document.lines
        .map((line) => this.renderLine(line, state))
        .join("");
    });

    if (restore) {
      const input = this.lineList.querySelector<HTMLInputElement>(
        `input[data-line="${restore.line}"]`
      );
      if (input) {
        input.focus();
        input.setSelectionRange(restore.caret, restore.caret);
      }
    }
    this.wireLineEvents();

    this.root.querySelector<HTMLElement>("#goals")!.innerHTML = state.goals
      .map(
        (goal) => `
          <div class="goal ${goal.achieved ? "achieved" : "open"}">
            ${goal.achieved ? "✓" : "○"} <code>${esc(goal.statement)}</code>
          </div>`
      )
      .join("");

    const armed = this.root.querySelector<HTMLElement>("#armed")!;
    if (state.armedRule) {
      armed.innerHTML = `
        <div>rule <code>${esc(state.armedRule)}</code>
        refs [${state.armedRefs.join(", ")}] on line ${state.selectedLine ?? "—"}
        <button id="btn-apply-rule">apply</button>
        <button id="btn-cancel-rule">cancel</button></div>`;
    } else {
      armed.innerHTML = `<div class="hint">pick a rule, click its references, apply</div>`;
    }
  }

  private renderLine(line: LineSnapshot, state: EditorState): string {
    const verdict = state.verdicts.find((v) => v.line === line.index) ?? null;
    const selected = state.selectedLine === line.index ? " selected" : "";
    const bars = "<span class='bar'></span>".repeat(line.depth);
    const rule =
      line.kind === "conclusion"
        ? `${esc(line.rule ?? "(no rule)")}${
            line.refs.length ? ` [${line.refs.join(", ")}]` : ""
          }`
        : line.kind;
    const inline =
      state.inlineError && state.inlineError.line === line.index
        ? `<div class="inline-error">${esc(state.inlineError.message)}</div>`
        : "";
    return `
      <li class="line${selected}" data-line="${line.index}">
        <span class="num">${line.index}</span>
        ${bars}
        <input data-line="${line.index}" data-caret-target="1"
               value="${esc(line.statement)}" spellcheck="false">
        <span class="rule-label">${rule}</span>
        ${this.renderVerdict(verdict, state.verdictsFresh)}
        <button class="del" data-del="${line.index}" title="delete line">✕</button>
        ${inline}
      </li>`;
  }

  private renderVerdict(verdict: Verdict | null, fresh: boolean): string {
    if (!fresh || verdict === null) {
      return `<span class="verdict pending" title="re-checking">…</span>`;
    }
    if (verdict.status === "valid") {
      return `<span class="verdict valid">✓</span>`;
    }
    return `<span class="verdict invalid" title="${esc(verdict.message)}">
        ✗ ${esc(verdict.code ?? "")}</span>`;
  }

  private wireLineEvents(): void {
    for (const input of this.lineList.querySelectorAll<HTMLInputElement>("input[data-line]")) {
      const line = Number(input.dataset.line);
      input.onfocus = () => {
        if (this.store.state.armedRule === null) {
          this.store.selectLine(line);
        }
      };
      input.onchange = () => void this.store.editStatement(line, input.value);
      input.onkeydown = (event) => {
        if (event.key === "Enter") {
          input.blur();
        }
      };
    }
    for (const item of this.lineList.querySelectorAll<HTMLElement>("li.line")) {
      item.onclick = (event) => {
        const line = Number(item.dataset.line);
        if (
          this.store.state.armedRule !== null &&
          !(event.target instanceof HTMLInputElement)
        ) {
          this.store.armRef(line);
        }
      };
    }
    for (const button of this.lineList.querySelectorAll<HTMLElement>("[data-del]")) {
      button.onclick = (event) => {
        event.stopPropagation();
        void this.store.deleteLine(Number(button.dataset.del));
      };
    }
  }
}
