// Wizard state machine. The state is just the program plus the answer
// history; every view is derived by replaying the history from the root,
// so back/restart are history operations and can never drift from the
// execution semantics.

import { ProgramDocument, ProgramNode, parseDocument } from './types.js';

export type Answer = { choice: string } | { number: number };

export interface WizardState {
  program: ProgramDocument;
  history: Answer[];
}

export type View =
  | { kind: 'choice'; prompt: string; options: string[]; output: string[] }
  | { kind: 'number'; prompt: string; output: string[] }
  | { kind: 'finished'; output: string[] }
  | { kind: 'failed'; reason: string; output: string[] };

export function loadProgram(documentValue: unknown): WizardState {
  return { program: parseDocument(documentValue), history: [] };
}

export function currentView(state: WizardState): View {
  const output: string[] = [];
  let node: ProgramNode = state.program.root;
  let remaining = state.history.slice();

  for (;;) {
    while (node.kind === 'print') {
      output.push(node.text);
      node = node.next;
    }
    if (node.kind === 'exit') {
      return { kind: 'finished', output };
    }
    if (node.kind === 'ask') {
      const answer = remaining.shift();
      if (answer === undefined) {
        return {
          kind: 'choice',
          prompt: node.prompt,
          options: node.branches.map((b) => b.match),
          output,
        };
      }
      if (!('choice' in answer)) {
        return { kind: 'failed', reason: 'unmatched answer', output };
      }
      const trimmed = answer.choice.trim();
      const branch = node.branches.find((b) => b.match === trimmed);
      if (!branch) {
        return { kind: 'failed', reason: 'unmatched answer', output };
      }
      node = branch.node;
      continue;
    }
    // numeric question: first threshold with value strictly above its limit
    const answer = remaining.shift();
    if (answer === undefined) {
      return { kind: 'number', prompt: node.prompt, output };
    }
    if (!('number' in answer)) {
      return { kind: 'failed', reason: 'no matching branch', output };
    }
    const threshold = node.thresholds.find((t) => answer.number > t.limit);
    if (threshold) {
      node = threshold.node;
    } else if (node.otherwise !== null) {
      node = node.otherwise;
    } else {
      return { kind: 'failed', reason: 'no matching branch', output };
    }
  }
}

export function choose(state: WizardState, optionIndex: number): WizardState {
  const view = currentView(state);
  if (view.kind !== 'choice') throw new Error('not at a choice step');
  if (optionIndex < 0 || optionIndex >= view.options.length) {
    throw new Error(`option index ${optionIndex} out of range`);
  }
  return {
    program: state.program,
    history: [...state.history, { choice: view.options[optionIndex] }],
  };
}

export function enterNumber(state: WizardState, value: number): WizardState {
  const view = currentView(state);
  if (view.kind !== 'number') throw new Error('not at a number step');
  if (!Number.isInteger(value)) throw new Error('value must be an integer');
  return { program: state.program, history: [...state.history, { number: value }] };
}

export function back(state: WizardState): WizardState {
  if (state.history.length === 0) return state;
  return { program: state.program, history: state.history.slice(0, -1) };
}

export function restart(state: WizardState): WizardState {
  return { program: state.program, history: [] };
}
