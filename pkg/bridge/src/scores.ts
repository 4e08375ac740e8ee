/**
 * Raw-score exporters in the toolkit's interchange TSV formats.
 *
 * Scores come from token-overlap cosine against the bundled class
 * passages and queries: deterministic, range-correct, and format-exact
 * stand-ins for model outputs. Swap in a model-backed scorer by replacing
 * the relevance functions; the file writers are the binding contract.
 */

import { Article, composeText } from "./corpus.js";
import { PASSAGES, QUERIES } from "./resources.js";
import { splitSentences, tokenize } from "./text.js";

function countVector(tokens: string[]): Map<string, number> {
    const counts = new Map<string, number>();
    for (const t of tokens) counts.set(t, (counts.get(t) ?? 0) + 1);
    return counts;
}

function cosineCounts(a: Map<string, number>, b: Map<string, number>): number {
    let dot = 0;
    for (const [t, wa] of a) {
        const wb = b.get(t);
        if (wb !== undefined) dot += wa * wb;
    }
    let na = 0;
    for (const w of a.values()) na += w * w;
    let nb = 0;
    for (const w of b.values()) nb += w * w;
    if (na === 0 || nb === 0) return 0;
    const c = dot / (Math.sqrt(na) * Math.sqrt(nb));
    return Math.min(1, Math.max(0, c));
}

const VACCINE_PASSAGE = countVector(tokenize(PASSAGES.vaccine));
const THERA_PASSAGE = countVector(tokenize(PASSAGES.therapeutics));
const VACCINE_QUERY = countVector(tokenize(QUERIES.vaccine));
const THERA_QUERY = countVector(tokenize(QUERIES.therapeutics));

/** Saturating map from overlap cosine to a next-sentence-style probability. */
function saturate(cos: number): number {
    return 1 - (1 - cos) ** 4;
}

export function nspRows(articles: Article[]): string {
    const lines = articles.map((a) => {
        const counts = countVector(tokenize(composeText(a)));
        const pVaccine = saturate(cosineCounts(counts, VACCINE_PASSAGE));
        const pThera = saturate(cosineCounts(counts, THERA_PASSAGE));
        return `${a.id}\t${pVaccine.toFixed(6)}\t${pThera.toFixed(6)}`;
    });
    return lines.join("\n") + "\n";
}

export function chRows(articles: Article[]): string {
    const lines = articles.map((a) => {
        const counts = countVector(tokenize(composeText(a)));
        const cosV = cosineCounts(counts, VACCINE_PASSAGE);
        const cosT = cosineCounts(counts, THERA_PASSAGE);
        const p = cosV + cosT > 0 ? cosT / (cosV + cosT) : 0.5;
        return `${a.id}\t${p.toFixed(6)}`;
    });
    return lines.join("\n") + "\n";
}

function segmentScores(segments: string[], query: Map<string, number>): number[] {
    return segments.map((seg) => {
        const score = 5 * cosineCounts(countVector(tokenize(seg)), query);
        return Math.min(5, Math.max(0, score));
    });
}

export function stsRows(articles: Article[]): string {
    const lines: string[] = [];
    for (const a of articles) {
        const text = composeText(a);
        let segments = splitSentences(text);
        if (segments.length === 0) segments = [text];
        const vaccine = segmentScores(segments, VACCINE_QUERY);
        const thera = segmentScores(segments, THERA_QUERY);
        lines.push(`${a.id}\tvaccine\t${vaccine.map((s) => s.toFixed(4)).join(",")}`);
        lines.push(`${a.id}\ttherapeutics\t${thera.map((s) => s.toFixed(4)).join(",")}`);
    }
    return lines.join("\n") + "\n";
}

export function gsRows(articles: Article[]): string {
    const lines = articles.map((a) => {
        const counts = countVector(tokenize(composeText(a)));
        const cosV = cosineCounts(counts, VACCINE_QUERY);
        const cosT = cosineCounts(counts, THERA_QUERY);
        let label = "other";
        if (Math.max(cosV, cosT) >= 0.05) label = cosV >= cosT ? "vaccine" : "therapeutics";
        const score = Math.max(cosV, cosT);
        return `${a.id}\t${label}\t${score.toFixed(6)}`;
    });
    return lines.join("\n") + "\n";
}
