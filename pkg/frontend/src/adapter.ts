/**
 * Core conversion: raw text in, one JSONL object per sentence out.
 *
 * Output line order always equals input sentence order; ids encode
 * provenance as file:line:index so every sentence can be traced back
 * to its source. The backend identifier is recorded in each object.
 */
import { readFileSync, writeFileSync } from 'node:fs';
import { basename } from 'node:path';

import { AdapterError, makeBackend, ParserBackend } from './backend.js';
import { segmentSentences } from './tokenize.js';

export interface AdapterConfig {
  language: string;
  inputPath: string;
  outputPath: string;
  group: string;
  segment: boolean;
  backend: string;
}

export interface AdapterReport {
  written: number;
  skipped: string[]; // ids of sentences the backend failed on
}

interface SourceSentence {
  id: string;
  text: string;
}

export function collectSentences(
  text: string, fileName: string, segment: boolean,
): SourceSentence[] {
  const out: SourceSentence[] = [];
  const lines = text.split(/\r?\n/);
  lines.forEach((line, lineIdx) => {
    const trimmed = line.trim();
    if (trimmed.length === 0) return;
    const pieces = segment ? segmentSentences(trimmed) : [trimmed];
    pieces.forEach((piece, sentIdx) => {
      out.push({ id: `${fileName}:${lineIdx + 1}:${sentIdx}`, text: piece });
    });
  });
  return out;
}

export function convert(
  sentences: SourceSentence[], backend: ParserBackend, language: string,
  group: string,
): { lines: string[]; skipped: string[] } {
  if (!backend.supports(language)) {
    throw new AdapterError(
      `language ${JSON.stringify(language)} is not supported by backend ${backend.id}`,
    );
  }
  const parses = backend.parse(sentences.map((s) => s.text), language);
  const lines: string[] = [];
  const skipped: string[] = [];
  sentences.forEach((sentence, i) => {
    const bracketed = parses[i];
    if (bracketed === null || bracketed === undefined) {
      skipped.push(sentence.id);
      return;
    }
    lines.push(JSON.stringify({
      id: sentence.id,
      group,
      bracketed,
      backend: backend.id,
    }));
  });
  return { lines, skipped };
}

export function parseCorpus(config: AdapterConfig): AdapterReport {
  const backend = makeBackend(config.backend);
  const text = readFileSync(config.inputPath, 'utf-8');
  const sentences = collectSentences(
    text, basename(config.inputPath), config.segment);
  const { lines, skipped } = convert(
    sentences, backend, config.language, config.group);
  writeFileSync(config.outputPath,
    lines.length > 0 ? lines.join('\n') + '\n' : '');
  return { written: lines.length, skipped };
}
