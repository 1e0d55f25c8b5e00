/**
 * Deterministic tokenization and sentence segmentation for
 * whitespace-delimited languages.
 */

// Languages the built-in backend can tokenize: whitespace-delimited
// scripts only. CJK and Thai need a segmenting model we do not ship.
export const WHITESPACE_LANGUAGES = new Set([
  'en', 'de', 'fr', 'es', 'it', 'pt', 'nl', 'ru', 'sv', 'da', 'no',
  'fi', 'pl', 'cs', 'uk', 'ro', 'hu', 'tr',
]);

// Words (letters/digits, apostrophes and hyphens kept word-internal),
// otherwise one token per symbol character.
const TOKEN_RE = /[\p{L}\p{N}]+(?:['’-][\p{L}\p{N}]+)*|[^\s\p{L}\p{N}]/gu;

export function tokenize(sentence: string): string[] {
  return Array.from(sentence.matchAll(TOKEN_RE), (m) => m[0]);
}

/** Bracketed atoms cannot contain parentheses; use the PTB escapes. */
export function escapeAtom(token: string): string {
  return token.replace(/\(/g, '-LRB-').replace(/\)/g, '-RRB-');
}

/** Split one line of text into sentences at terminal punctuation. */
export function segmentSentences(text: string): string[] {
  return text
    .split(/(?<=[.!?…])\s+/u)
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
}
