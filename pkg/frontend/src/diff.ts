/**
 * Client-side re-implementation of the server's canonical token diff, used
 * for the live edit preview. Must stay in exact agreement with the server:
 * the shared fixture suite (fixtures/diff-fixtures.json) pins tokenization,
 * distances, and op sequences on both sides.
 */

export type OpKind = "MATCH" | "SUBSTITUTE" | "DELETE" | "INSERT";

export interface EditOp {
  kind: OpKind;
  position_a: number;
  position_b: number;
  token_a: string | null;
  token_b: string | null;
}

const WORD = "[\\p{L}\\p{N}_]";
const TOKEN_RE = new RegExp(
  `n't(?!${WORD})` +                              // negation clitic
  `|'(?:re|ve|ll|d|m|s)(?!${WORD})` +             // other clitics
  `|\\d+(?:[.,]\\d+)*` +                          // numbers with separators
  `|(?:(?!n't)${WORD})+(?:-(?:(?!n't)${WORD})+)*` + // words with inner hyphens
  `|[^\\p{L}\\p{N}_\\s]`,                         // lone symbols
  "giu",
);

export function tokenize(text: string): string[] {
  return text.match(TOKEN_RE) ?? [];
}

function fold(token: string): string {
  return token.toLowerCase();
}

/** Unit-cost Levenshtein table over case-folded tokens. */
function dpTable(a: string[], b: string[]): Int32Array[] {
  const m = a.length;
  const n = b.length;
  const af = a.map(fold);
  const bf = b.map(fold);
  const dp: Int32Array[] = [];
  for (let i = 0; i <= m; i++) {
    dp.push(new Int32Array(n + 1));
  }
  for (let j = 0; j <= n; j++) dp[0][j] = j;
  for (let i = 1; i <= m; i++) {
    dp[i][0] = i;
    for (let j = 1; j <= n; j++) {
      const cost = af[i - 1] === bf[j - 1] ? 0 : 1;
      dp[i][j] = Math.min(dp[i - 1][j] + 1, dp[i][j - 1] + 1, dp[i - 1][j - 1] + cost);
    }
  }
  return dp;
}

/**
 * Canonical optimal script: ties broken MATCH > SUBSTITUTE > DELETE > INSERT,
 * resolved right-to-left over the DP table (same rule as the server).
 */
export function editScript(aTokens: string[], bTokens: string[]): EditOp[] {
  const dp = dpTable(aTokens, bTokens);
  const af = aTokens.map(fold);
  const bf = bTokens.map(fold);
  let i = aTokens.length;
  let j = bTokens.length;
  const ops: EditOp[] = [];
  while (i > 0 || j > 0) {
    const here = dp[i][j];
    if (i > 0 && j > 0 && af[i - 1] === bf[j - 1] && here === dp[i - 1][j - 1]) {
      ops.push({ kind: "MATCH", position_a: i - 1, position_b: j - 1,
                 token_a: aTokens[i - 1], token_b: bTokens[j - 1] });
      i--; j--;
    } else if (i > 0 && j > 0 && here === dp[i - 1][j - 1] + 1) {
      ops.push({ kind: "SUBSTITUTE", position_a: i - 1, position_b: j - 1,
                 token_a: aTokens[i - 1], token_b: bTokens[j - 1] });
      i--; j--;
    } else if (i > 0 && here === dp[i - 1][j] + 1) {
      ops.push({ kind: "DELETE", position_a: i - 1, position_b: j,
                 token_a: aTokens[i - 1], token_b: null });
      i--;
    } else {
      ops.push({ kind: "INSERT", position_a: i, position_b: j - 1,
                 token_a: null, token_b: bTokens[j - 1] });
      j--;
    }
  }
  ops.reverse();
  return ops;
}

export function diffHeadlines(original: string, edited: string): EditOp[] {
  return editScript(tokenize(original), tokenize(edited));
}

export function editDistance(original: string, edited: string): number {
  return diffHeadlines(original, edited).filter((op) => op.kind !== "MATCH").length;
}
