/**
 * Reader for the article metadata CSV (header id,title,abstract,journal,
 * RFC-4180 quoting). Also accepts the corpus artifact written by the main
 * toolkit, which prefixes the same CSV with a magic header line.
 *
 * Filtering matches the toolkit's ingestion: rows with an empty id,
 * title, abstract, or journal (after trimming) are dropped.
 */

export interface Article {
    id: string;
    title: string;
    abstract: string;
    journal: string;
}

const CORPUS_MAGIC = "#vtscreen-corpus-v1";

/** Split CSV text into rows of fields, honoring quoted fields. */
export function parseCsv(text: string): string[][] {
    const rows: string[][] = [];
    let field = "";
    let row: string[] = [];
    let inQuotes = false;
    let i = 0;
    while (i < text.length) {
        const ch = text[i];
        if (inQuotes) {
            if (ch === '"') {
                if (text[i + 1] === '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                inQuotes = false;
                i += 1;
                continue;
            }
            field += ch;
            i += 1;
            continue;
        }
        if (ch === '"') {
            inQuotes = true;
            i += 1;
            continue;
        }
        if (ch === ",") {
            row.push(field);
            field = "";
            i += 1;
            continue;
        }
        if (ch === "\n" || ch === "\r") {
            if (ch === "\r" && text[i + 1] === "\n") i += 1;
            row.push(field);
            rows.push(row);
            field = "";
            row = [];
            i += 1;
            continue;
        }
        field += ch;
        i += 1;
    }
    if (field.length > 0 || row.length > 0) {
        row.push(field);
        rows.push(row);
    }
    return rows;
}

export function parseCorpus(text: string): Article[] {
    if (text.startsWith(CORPUS_MAGIC)) {
        text = text.slice(text.indexOf("\n") + 1);
    }
    const rows = parseCsv(text).filter((r) => r.length > 1 || (r.length === 1 && r[0].trim() !== ""));
    if (rows.length === 0) return [];
    const header = rows[0].map((h) => h.trim());
    const col = (name: string) => header.indexOf(name);
    const idCol = col("id") >= 0 ? col("id") : col("cord_uid");
    const titleCol = col("title");
    const abstractCol = col("abstract");
    const journalCol = col("journal");
    if (idCol < 0 || titleCol < 0 || abstractCol < 0 || journalCol < 0) {
        throw new Error("metadata header must contain id (or cord_uid), title, abstract, journal");
    }
    const articles: Article[] = [];
    const seen = new Set<string>();
    for (const row of rows.slice(1)) {
        if (Math.max(idCol, titleCol, abstractCol, journalCol) >= row.length) continue;
        const article = {
            id: row[idCol].trim(),
            title: row[titleCol].trim(),
            abstract: row[abstractCol].trim(),
            journal: row[journalCol].trim(),
        };
        if (!article.id || !article.title || !article.abstract || !article.journal) continue;
        if (seen.has(article.id)) throw new Error(`duplicate article id ${article.id}`);
        seen.add(article.id);
        articles.push(article);
    }
    return articles;
}

/** Scoring text: title + abstract + journal joined by single spaces. */
export function composeText(a: Article): string {
    return `${a.title} ${a.abstract} ${a.journal}`;
}
