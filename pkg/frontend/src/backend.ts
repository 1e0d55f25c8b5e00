/**
 * Parser backends: each turns sentences into labeled bracketed trees.
 *
 * The built-in backend is a deterministic structural placeholder (a
 * balanced binary merge over the tokens) so the pipeline plumbing can
 * be exercised and pinned without downloading parser models; plug a
 * real constituency parser in through the `cmd:` backend, which pipes
 * one sentence per stdin line and expects one bracketed tree per
 * stdout line.
 */
import { spawnSync } from 'node:child_process';

import { escapeAtom, tokenize, WHITESPACE_LANGUAGES } from './tokenize.js';

export class AdapterError extends Error {}

export interface ParserBackend {
  /** Pinned identifier recorded in every emitted JSONL object. */
  readonly id: string;
  supports(language: string): boolean;
  /** One bracketed tree per sentence; null marks a failed sentence. */
  parse(sentences: string[], language: string): (string | null)[];
}

/** Balanced binary merge over the tokens, every node labeled. */
export function balancedBracketing(tokens: string[]): string {
  let nodes = tokens.map((t) => `(TOK ${escapeAtom(t)})`);
  while (nodes.length > 1) {
    const paired: string[] = [];
    for (let i = 0; i + 1 < nodes.length; i += 2) {
      paired.push(`(X ${nodes[i]} ${nodes[i + 1]})`);
    }
    if (nodes.length % 2 === 1) {
      paired.push(nodes[nodes.length - 1]);
    }
    nodes = paired;
  }
  return `(ROOT ${nodes[0]})`;
}

export class BuiltinBackend implements ParserBackend {
  readonly id = 'builtin/1.0.0';

  supports(language: string): boolean {
    return WHITESPACE_LANGUAGES.has(language);
  }

  parse(sentences: string[], language: string): (string | null)[] {
    void language;
    return sentences.map((sentence) => {
      const tokens = tokenize(sentence);
      return tokens.length > 0 ? balancedBracketing(tokens) : null;
    });
  }
}

function looksBracketed(line: string): boolean {
  if (!line.startsWith('(') || !line.endsWith(')')) return false;
  let depth = 0;
  for (const ch of line) {
    if (ch === '(') depth += 1;
    else if (ch === ')') {
      depth -= 1;
      if (depth < 0) return false;
    }
  }
  return depth === 0;
}

export class CommandBackend implements ParserBackend {
  readonly id: string;
  private readonly argv: string[];

  constructor(command: string) {
    this.argv = command.split(/\s+/).filter((a) => a.length > 0);
    if (this.argv.length === 0) {
      throw new AdapterError('cmd backend needs a non-empty command');
    }
    this.id = `cmd:${this.argv.join(' ')}`;
  }

  supports(language: string): boolean {
    void language; // the external parser's concern
    return true;
  }

  parse(sentences: string[], language: string): (string | null)[] {
    void language;
    if (sentences.length === 0) return [];
    const result = spawnSync(this.argv[0], this.argv.slice(1), {
      input: sentences.join('\n') + '\n',
      encoding: 'utf-8',
      maxBuffer: 1 << 28,
    });
    if (result.error || result.status !== 0) {
      throw new AdapterError(
        `backend command failed: ${result.error?.message ?? `exit ${result.status}`}`,
      );
    }
    const lines = result.stdout.split('\n');
    return sentences.map((_, i) => {
      const line = (lines[i] ?? '').trim();
      return looksBracketed(line) ? line : null;
    });
  }
}

export function makeBackend(spec: string): ParserBackend {
  if (spec === 'builtin') return new BuiltinBackend();
  if (spec.startsWith('cmd:')) return new CommandBackend(spec.slice(4));
  throw new AdapterError(`unknown backend ${JSON.stringify(spec)}; ` +
    `use "builtin" or "cmd:<program>"`);
}
