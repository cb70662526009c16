// Program document types, mirroring the portable JSON export of the
// command-line toolchain (format "eqr-program", version 1).

export interface ExitNode {
  kind: 'exit';
}

export interface PrintNode {
  kind: 'print';
  text: string;
  next: ProgramNode;
}

export interface AskBranch {
  match: string;
  node: ProgramNode;
}

export interface AskNode {
  kind: 'ask';
  prompt: string;
  branches: AskBranch[];
}

export interface Threshold {
  limit: number;
  node: ProgramNode;
}

export interface AskNumericNode {
  kind: 'ask_numeric';
  prompt: string;
  thresholds: Threshold[];
  otherwise: ProgramNode | null;
}

export type ProgramNode = ExitNode | PrintNode | AskNode | AskNumericNode;

export interface ProgramDocument {
  format: 'eqr-program';
  version: number;
  root: ProgramNode;
}

export class SchemaError extends Error {}

function fail(message: string): never {
  throw new SchemaError(message);
}

function asNode(value: unknown, path: string): ProgramNode {
  if (typeof value !== 'object' || value === null) fail(`${path}: node must be an object`);
  const node = value as Record<string, unknown>;
  switch (node.kind) {
    case 'exit':
      return { kind: 'exit' };
    case 'print': {
      if (typeof node.text !== 'string') fail(`${path}: print node needs a text string`);
      return { kind: 'print', text: node.text, next: asNode(node.next, `${path}.next`) };
    }
    case 'ask': {
      if (typeof node.prompt !== 'string') fail(`${path}: ask node needs a prompt`);
      if (!Array.isArray(node.branches) || node.branches.length === 0) {
        fail(`${path}: ask node needs branches`);
      }
      const branches = node.branches.map((branch, i) => {
        if (typeof branch !== 'object' || branch === null) fail(`${path}.branches[${i}]: must be an object`);
        const b = branch as Record<string, unknown>;
        if (typeof b.match !== 'string') fail(`${path}.branches[${i}]: needs a match string`);
        return { match: b.match, node: asNode(b.node, `${path}.branches[${i}].node`) };
      });
      const seen = new Set<string>();
      for (const branch of branches) {
        if (seen.has(branch.match)) fail(`${path}: duplicate branch match "${branch.match}"`);
        seen.add(branch.match);
      }
      return { kind: 'ask', prompt: node.prompt, branches };
    }
    case 'ask_numeric': {
      if (typeof node.prompt !== 'string') fail(`${path}: ask_numeric node needs a prompt`);
      if (!Array.isArray(node.thresholds) || node.thresholds.length === 0) {
        fail(`${path}: ask_numeric node needs thresholds`);
      }
      const thresholds = node.thresholds.map((threshold, i) => {
        if (typeof threshold !== 'object' || threshold === null) fail(`${path}.thresholds[${i}]: must be an object`);
        const t = threshold as Record<string, unknown>;
        if (typeof t.limit !== 'number' || !Number.isInteger(t.limit)) {
          fail(`${path}.thresholds[${i}]: needs an integer limit`);
        }
        return { limit: t.limit, node: asNode(t.node, `${path}.thresholds[${i}].node`) };
      });
      for (let i = 1; i < thresholds.length; i++) {
        if (thresholds[i].limit >= thresholds[i - 1].limit) {
          fail(`${path}: thresholds must be strictly decreasing`);
        }
      }
      const otherwise =
        node.otherwise === null || node.otherwise === undefined
          ? null
          : asNode(node.otherwise, `${path}.otherwise`);
      return { kind: 'ask_numeric', prompt: node.prompt, thresholds, otherwise };
    }
    default:
      fail(`${path}: unknown node kind ${JSON.stringify(node.kind)}`);
  }
}

export function parseDocument(value: unknown): ProgramDocument {
  if (typeof value !== 'object' || value === null) fail('document must be an object');
  const doc = value as Record<string, unknown>;
  if (doc.format !== 'eqr-program') fail('not a program document');
  if (doc.version !== 1) fail(`unsupported document version ${JSON.stringify(doc.version)}`);
  return { format: 'eqr-program', version: 1, root: asNode(doc.root, 'root') };
}
