import { describe, expect, it } from "vitest";

import { preserveScroll } from "../src/scroll.js";
import { RULE_GROUPS, SYMBOLS, insertAtCaret } from "../src/symbols.js";

describe("scroll preservation", () => {
  it("restores the scroll offsets around a re-render", () => {
    const element = { scrollTop: 140, scrollLeft: 12 };
    const result = preserveScroll(element, () => {
      // a re-render typically resets the scroll position
      element.scrollTop = 0;
      element.scrollLeft = 0;
      return "rendered";
    });
    expect(result).toBe("rendered");
    expect(element.scrollTop).toBe(140);
    expect(element.scrollLeft).toBe(12);
  });

  it("restores even when the update throws", () => {
    const element = { scrollTop: 77, scrollLeft: 0 };
    expect(() =>
      preserveScroll(element, () => {
        element.scrollTop = 0;
        throw new Error("render failed");
      })
    ).toThrow("render failed");
    expect(element.scrollTop).toBe(77);
  });
});

describe("symbol keyboard", () => {
  it("inserts at the caret and advances it", () => {
    expect(insertAtCaret("P  Q", 2, "∧")).toEqual({ text: "P ∧ Q", caret: 3 });
    expect(insertAtCaret("", 0, "∀")).toEqual({ text: "∀", caret: 1 });
    expect(insertAtCaret("PQ", 99, "⊥")).toEqual({ text: "PQ⊥", caret: 3 });
  });

  it("offers the ten standard symbols", () => {
    expect(SYMBOLS).toEqual(["¬", "∧", "∨", "→", "↔", "⊕", "∀", "∃", "⊤", "⊥"]);
  });

  it("palette groups cover all 32 rules plus subproof", () => {
    const count = RULE_GROUPS.reduce((n, group) => n + group.rules.length, 0);
    expect(count).toBe(33);
  });
});
