#!/usr/bin/env node
/**
 * adapter --lang en --group english --in text.txt --out corpus.jsonl
 *         [--segment] [--backend builtin|cmd:<program>]
 *
 * Exit codes: 0 on success (including empty input, with a warning),
 * 1 on usage errors, unsupported languages, or when every sentence
 * failed to parse.
 */
import { realpathSync } from 'node:fs';
import { fileURLToPath } from 'node:url';
import { parseArgs } from 'node:util';

import { parseCorpus } from './adapter.js';
import { AdapterError } from './backend.js';

function usage(): void {
  console.error(
    'usage: adapter --lang <code> --group <label> --in <text file> ' +
    '--out <jsonl file> [--segment] [--backend builtin|cmd:<program>]');
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        lang: { type: 'string' },
        group: { type: 'string' },
        in: { type: 'string' },
        out: { type: 'string' },
        segment: { type: 'boolean', default: false },
        backend: { type: 'string', default: 'builtin' },
      },
      allowPositionals: false,
    });
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    usage();
    return 1;
  }
  const { values } = parsed;
  if (!values.lang || !values.group || !values.in || !values.out) {
    console.error('usage error: --lang, --group, --in and --out are required');
    usage();
    return 1;
  }
  try {
    const report = parseCorpus({
      language: values.lang,
      group: values.group,
      inputPath: values.in,
      outputPath: values.out,
      segment: values.segment ?? false,
      backend: values.backend ?? 'builtin',
    });
    for (const id of report.skipped) {
      console.error(`warning: backend failed on sentence ${id}; skipped`);
    }
    if (report.written === 0 && report.skipped.length > 0) {
      console.error('error: backend failed on every sentence');
      return 1;
    }
    if (report.written === 0) {
      console.error('warning: input contained no sentences; wrote empty output');
    }
    return 0;
  } catch (err) {
    if (err instanceof AdapterError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    if ((err as NodeJS.ErrnoException).code === 'ENOENT') {
      console.error(`error: ${(err as Error).message}`);
      return 1;
    }
    throw err;
  }
}

const invokedPath = process.argv[1] ? realpathSync(process.argv[1]) : '';
if (invokedPath === fileURLToPath(import.meta.url)) {
  process.exit(main(process.argv.slice(2)));
}
