/**
 * Averaged token-embedding export.
 *
 * Each token occurrence is encoded in its document context; occurrences
 * are averaged within a document, and the per-document vectors are
 * averaged across every document containing the token. Output is the
 * text embedding format: one `token v1 ... vd` row per token, constant
 * dimension, no header.
 */

import { Article, composeText } from "./corpus.js";
import { ContextualEncoder, meanVector } from "./encoder.js";
import { tokenize } from "./text.js";

export function buildEmbeddingTable(
    articles: Article[],
    encoder: ContextualEncoder,
): Map<string, number[]> {
    const perDocVectors = new Map<string, number[][]>();
    for (const article of articles) {
        const tokens = tokenize(composeText(article));
        const occurrences = new Map<string, number[][]>();
        const counters = new Map<string, number>();
        for (const token of tokens) {
            const n = counters.get(token) ?? 0;
            counters.set(token, n + 1);
            const vec = encoder.encode(token, article.id, n);
            const bucket = occurrences.get(token);
            if (bucket) bucket.push(vec);
            else occurrences.set(token, [vec]);
        }
        for (const [token, vecs] of occurrences) {
            const docVector = meanVector(vecs, encoder.dim);
            const bucket = perDocVectors.get(token);
            if (bucket) bucket.push(docVector);
            else perDocVectors.set(token, [docVector]);
        }
    }
    const table = new Map<string, number[]>();
    for (const [token, vecs] of perDocVectors) {
        table.set(token, meanVector(vecs, encoder.dim));
    }
    return table;
}

export function formatEmbeddings(table: Map<string, number[]>): string {
    const tokens = [...table.keys()].sort();
    const lines = tokens.map((token) => {
        const values = table.get(token)!;
        return token + " " + values.map((x) => x.toFixed(6)).join(" ");
    });
    return lines.join("\n") + "\n";
}
