/** On-screen symbol keyboard: the characters and caret-insertion helper. */

export const SYMBOLS = ["¬", "∧", "∨", "→", "↔", "⊕", "∀", "∃", "⊤", "⊥"] as const;

export interface CaretText {
  text: string;
  caret: number;
}

/** Insert a symbol at the caret and place the caret after it. */
export function insertAtCaret(text: string, caret: number, symbol: string): CaretText {
  const at = Math.min(Math.max(caret, 0), text.length);
  return {
    text: text.slice(0, at) + symbol + text.slice(at),
    caret: at + symbol.length,
  };
}

/** Groups for the rules palette; labels match the engine's rule names. */
export const RULE_GROUPS: ReadonlyArray<{ family: string; rules: ReadonlyArray<[string, string]> }> = [
  {
    family: "Inference",
    rules: [
      ["modus_ponens", "Modus Ponens"],
      ["addition", "Addition"],
      ["simplification", "Simplification"],
      ["conjunction", "Conjunction"],
      ["hypothetical_syllogism", "Hypothetical Syllogism"],
      ["disjunctive_syllogism", "Disjunctive Syllogism"],
      ["excluded_middle", "Excluded Middle"],
      ["constructive_dilemma", "Constructive Dilemma"],
    ],
  },
  {
    family: "Equivalence",
    rules: [
      ["implication", "Implication"],
      ["demorgan", "DeMorgan"],
      ["association", "Association"],
      ["commutativity", "Commutativity"],
      ["idempotence", "Idempotence"],
      ["distribution", "Distribution"],
      ["equivalence", "Equivalence"],
      ["double_negation", "Double Negation"],
      ["exportation", "Exportation"],
      ["subsumption", "Subsumption"],
      ["contrapositive", "Contrapositive"],
    ],
  },
  {
    family: "Predicate",
    rules: [
      ["universal_generalization", "Universal Generalization"],
      ["universal_instantiation", "Universal Instantiation"],
      ["existential_generalization", "Existential Generalization"],
      ["existential_instantiation", "Existential Instantiation"],
      ["bound_variable", "Bound Variable"],
      ["null_quantifier", "Null Quantifier"],
      ["prenex", "Prenex"],
      ["identity", "Identity"],
      ["free_variable", "Free Variable"],
    ],
  },
  {
    family: "Boolean",
    rules: [
      ["boolean_identity", "Boolean Identity"],
      ["boolean_negation", "Boolean Negation"],
      ["boolean_dominance", "Boolean Dominance"],
      ["symbol_negation", "Symbol Negation"],
    ],
  },
  {
    family: "Structural",
    rules: [["subproof", "Subproof"]],
  },
];
