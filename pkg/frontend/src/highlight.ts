/** Tiny lexer for formal-statement sources, just enough for display.
 *
 * Splits a source string into typed tokens so the renderer can wrap each
 * one in a styled span.  Token texts always concatenate back to the exact
 * input, so highlighting can never alter what the reviewer reads.
 */

export type TokenKind =
  | "keyword"
  | "comment"
  | "string"
  | "number"
  | "hole"
  | "ident"
  | "op"
  | "space";

export interface Token {
  kind: TokenKind;
  text: string;
}

const KEYWORDS = new Set([
  "import",
  "open",
  "theorem",
  "lemma",
  "example",
  "def",
  "abbrev",
  "by",
  "fun",
  "let",
  "have",
  "show",
  "from",
  "set_option",
  "noncomputable",
  "variable",
  "universe",
  "namespace",
  "end",
]);

const HOLES = new Set(["sorry", "admit"]);

const IDENT_START = /[A-Za-z_À-῿℀-⅏]/;
const IDENT_CONT = /[A-Za-z0-9_'!?.À-῿℀-⅏]/;

export function tokenize(source: string): Token[] {
  const tokens: Token[] = [];
  let i = 0;
  const push = (kind: TokenKind, text: string) => {
    const last = tokens[tokens.length - 1];
    if (last !== undefined && last.kind === kind) {
      last.text += text;
    } else {
      tokens.push({ kind, text });
    }
  };

  while (i < source.length) {
    const ch = source[i] as string;

    if (/\s/.test(ch)) {
      let j = i;
      while (j < source.length && /\s/.test(source[j] as string)) j += 1;
      push("space", source.slice(i, j));
      i = j;
      continue;
    }

    if (ch === "-" && source[i + 1] === "-") {
      let j = source.indexOf("\n", i);
      if (j === -1) j = source.length;
      push("comment", source.slice(i, j));
      i = j;
      continue;
    }

    if (ch === "/" && source[i + 1] === "-") {
      let depth = 1;
      let j = i + 2;
      while (j < source.length && depth > 0) {
        if (source[j] === "/" && source[j + 1] === "-") {
          depth += 1;
          j += 2;
        } else if (source[j] === "-" && source[j + 1] === "/") {
          depth -= 1;
          j += 2;
        } else {
          j += 1;
        }
      }
      push("comment", source.slice(i, j));
      i = j;
      continue;
    }

    if (ch === '"') {
      let j = i + 1;
      while (j < source.length && source[j] !== '"') {
        j += source[j] === "\\" ? 2 : 1;
      }
      j = Math.min(j + 1, source.length);
      push("string", source.slice(i, j));
      i = j;
      continue;
    }

    if (/[0-9]/.test(ch)) {
      let j = i;
      while (j < source.length && /[0-9.]/.test(source[j] as string)) j += 1;
      push("number", source.slice(i, j));
      i = j;
      continue;
    }

    if (IDENT_START.test(ch)) {
      let j = i;
      while (j < source.length && IDENT_CONT.test(source[j] as string)) j += 1;
      const word = source.slice(i, j);
      if (HOLES.has(word)) push("hole", word);
      else if (KEYWORDS.has(word)) push("keyword", word);
      else push("ident", word);
      i = j;
      continue;
    }

    push("op", ch);
    i += 1;
  }

  return tokens;
}
