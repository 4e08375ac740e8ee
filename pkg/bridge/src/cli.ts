#!/usr/bin/env node
/**
 * Bridge CLI: read an article metadata CSV (or corpus artifact) and write
 * interchange files for the screening toolkit.
 *
 *   vtscreen-bridge <job> --corpus meta.csv --out outdir [--dim 32] [--model hash-v1]
 *
 * Jobs: embeddings, nsp, ch, sts, gs, all. Output file names are fixed:
 * embeddings.txt, nsp_scores.tsv, ch_scores.tsv, sts_scores.tsv,
 * gs_predictions.tsv.
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { Article, parseCorpus } from "./corpus.js";
import { buildEmbeddingTable, formatEmbeddings } from "./embeddings.js";
import { HashEncoder } from "./encoder.js";
import { chRows, gsRows, nspRows, stsRows } from "./scores.js";

export const JOBS = ["embeddings", "nsp", "ch", "sts", "gs", "all"] as const;
export type Job = (typeof JOBS)[number];

export interface BridgeJob {
    job: Job;
    corpusPath: string;
    outDir: string;
    dim: number;
    model: string;
}

export function runJob(config: BridgeJob): string[] {
    const articles: Article[] = parseCorpus(readFileSync(config.corpusPath, "utf-8"));
    if (articles.length === 0) throw new Error(`${config.corpusPath}: no usable articles`);
    mkdirSync(config.outDir, { recursive: true });

    const written: string[] = [];
    const emit = (name: string, text: string) => {
        const path = join(config.outDir, name);
        writeFileSync(path, text, "utf-8");
        written.push(path);
    };

    const wants = (job: Job) => config.job === job || config.job === "all";
    if (wants("embeddings")) {
        const table = buildEmbeddingTable(articles, new HashEncoder(config.dim, config.model));
        emit("embeddings.txt", formatEmbeddings(table));
    }
    if (wants("nsp")) emit("nsp_scores.tsv", nspRows(articles));
    if (wants("ch")) emit("ch_scores.tsv", chRows(articles));
    if (wants("sts")) emit("sts_scores.tsv", stsRows(articles));
    if (wants("gs")) emit("gs_predictions.tsv", gsRows(articles));
    return written;
}

export function main(argv: string[]): number {
    const { values, positionals } = parseArgs({
        args: argv,
        allowPositionals: true,
        options: {
            corpus: { type: "string" },
            out: { type: "string" },
            dim: { type: "string", default: "32" },
            model: { type: "string", default: "hash-v1" },
        },
    });
    const job = positionals[0] as Job | undefined;
    if (!job || !JOBS.includes(job)) {
        console.error(`usage: vtscreen-bridge <${JOBS.join("|")}> --corpus FILE --out DIR [--dim N] [--model ID]`);
        return 1;
    }
    if (!values.corpus || !values.out) {
        console.error("error: --corpus and --out are required");
        return 1;
    }
    const dim = Number.parseInt(values.dim as string, 10);
    if (!Number.isFinite(dim) || dim < 1) {
        console.error("error: --dim must be a positive integer");
        return 1;
    }
    const written = runJob({
        job,
        corpusPath: values.corpus as string,
        outDir: values.out as string,
        dim,
        model: values.model as string,
    });
    for (const path of written) console.log(`wrote ${path}`);
    return 0;
}

if (process.argv[1] && fileURLToPath(import.meta.url) === resolve(process.argv[1])) {
    try {
        process.exitCode = main(process.argv.slice(2));
    } catch (err) {
        console.error(`error: ${err instanceof Error ? err.message : err}`);
        process.exitCode = 1;
    }
}
