/**
 * Tokenization and sentence segmentation, kept rule-for-rule identical to
 * the main toolkit so exported tokens line up with its vocabulary:
 * lowercase runs of letters or digits; sentences split after '.', '?' or
 * '!' followed by whitespace and an uppercase letter.
 */

const TOKEN_RE = /[\p{L}\p{N}]+/gu;

export function tokenize(text: string): string[] {
    return text.toLowerCase().match(TOKEN_RE) ?? [];
}

const SENTENCE_END = new Set([".", "?", "!"]);

function isUpper(ch: string): boolean {
    return ch !== ch.toLowerCase() && ch === ch.toUpperCase();
}

export function splitSentences(text: string): string[] {
    const segments: string[] = [];
    let start = 0;
    let i = 0;
    while (i < text.length) {
        if (SENTENCE_END.has(text[i])) {
            const j = i + 1;
            let k = j;
            while (k < text.length && /\s/.test(text[k])) k += 1;
            if (k > j && k < text.length && isUpper(text[k])) {
                segments.push(text.slice(start, j));
                start = k;
                i = k;
                continue;
            }
        }
        i += 1;
    }
    segments.push(text.slice(start));
    return segments.map((s) => s.trim()).filter((s) => s.length > 0);
}
