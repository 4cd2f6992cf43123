/**
 * Typed-array client for the Time Warp Edit Distance toolkit.
 *
 * Exposes exactly two operations — one distance and one pairwise matrix —
 * over zero-copy Float64Array views. Inputs are validated here with the
 * same error taxonomy as the core, then handed to the installed `twed`
 * CLI; results come back at full float64 precision (JSON / 17 significant
 * digits), so values are bit-identical to the kernel's.
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, rmSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export class TwedError extends Error {}
export class NonIncreasingTimestampsError extends TwedError {}
export class DimensionMismatchError extends TwedError {}
export class NonFiniteValueError extends TwedError {}

export type NormP = "1" | "2" | "inf";

export interface TwedOptions {
  /** Gap penalty added to every delete operation. Default 1. */
  lambda?: number;
  /** Stiffness: weight of timestamp differences. Default 0.001. */
  gamma?: number;
  /** Lp norm on value vectors. Default "2". */
  normP?: NormP;
  /** Value dimension k; 1 unless given. */
  dim?: number;
  /** CLI executable; default "twed". */
  command?: string;
}

/** A validated view over one series: values row-major (p x k), times (p). */
export interface SeriesView {
  values: Float64Array;
  times: Float64Array;
  dim: number;
}

export function seriesView(
  values: Float64Array,
  times: Float64Array,
  dim = 1,
): SeriesView {
  if (!Number.isInteger(dim) || dim < 1) {
    throw new DimensionMismatchError(`dimension must be a positive integer, got ${dim}`);
  }
  if (values.length !== times.length * dim) {
    throw new DimensionMismatchError(
      `values length ${values.length} != ${times.length} samples x ${dim}`,
    );
  }
  for (const v of values) {
    if (!Number.isFinite(v)) throw new NonFiniteValueError(`non-finite value ${v}`);
  }
  for (let i = 0; i < times.length; i++) {
    if (!Number.isFinite(times[i])) {
      throw new NonFiniteValueError(`non-finite timestamp ${times[i]}`);
    }
    if (i > 0 && times[i] <= times[i - 1]) {
      throw new NonIncreasingTimestampsError(
        `timestamp at index ${i} (${times[i]}) is <= its predecessor (${times[i - 1]})`,
      );
    }
  }
  return { values, times, dim };
}

function header(dim: number): string {
  const cols = ["t"];
  for (let c = 1; c <= dim; c++) cols.push(`v${c}`);
  return cols.join(",");
}

/** JS number-to-string is shortest-round-trip: parses back bit-exact. */
function row(view: SeriesView, i: number): string {
  const parts = [String(view.times[i])];
  for (let c = 0; c < view.dim; c++) parts.push(String(view.values[i * view.dim + c]));
  return parts.join(",");
}

function writeSeriesCsv(path: string, view: SeriesView): void {
  const lines = [header(view.dim)];
  for (let i = 0; i < view.times.length; i++) lines.push(row(view, i));
  writeFileSync(path, lines.join("\n") + "\n");
}

function runCli(command: string, args: string[]): string {
  try {
    return execFileSync(command, args, { encoding: "utf8" });
  } catch (err: any) {
    const detail = err.stderr ? String(err.stderr).trim() : String(err.message);
    throw new TwedError(`twed CLI failed: ${detail}`);
  }
}

function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "twed-client-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function paramArgs(opts: TwedOptions): string[] {
  return [
    "--lambda", String(opts.lambda ?? 1),
    "--gamma", String(opts.gamma ?? 0.001),
    "--p", opts.normP ?? "2",
  ];
}

/**
 * Distance between two series given as raw buffers.
 * Bit-identical to the kernel result on the same inputs.
 */
export function boundTwed(
  valuesA: Float64Array,
  timesA: Float64Array,
  valuesB: Float64Array,
  timesB: Float64Array,
  opts: TwedOptions = {},
): number {
  const dim = opts.dim ?? 1;
  const a = seriesView(valuesA, timesA, dim);
  const b = seriesView(valuesB, timesB, dim);
  return withTempDir((dir) => {
    const fa = join(dir, "a.csv");
    const fb = join(dir, "b.csv");
    writeSeriesCsv(fa, a);
    writeSeriesCsv(fb, b);
    const out = runCli(opts.command ?? "twed", [
      "dist", fa, fb, ...paramArgs(opts), "--json",
    ]);
    return JSON.parse(out).distance as number;
  });
}

/**
 * Pairwise distance matrix over a list of series buffers.
 * Symmetric with a zero diagonal, equal to the CLI matrix output.
 */
export function boundMatrix(
  seriesList: { values: Float64Array; times: Float64Array }[],
  opts: TwedOptions = {},
): number[][] {
  const dim = opts.dim ?? 1;
  const views = seriesList.map((s) => seriesView(s.values, s.times, dim));
  return withTempDir((dir) => {
    const input = join(dir, "dataset.csv");
    const output = join(dir, "matrix.csv");
    const lines = ["series_id," + header(dim)];
    views.forEach((view, idx) => {
      for (let i = 0; i < view.times.length; i++) lines.push(`s${idx},${row(view, i)}`);
    });
    writeFileSync(input, lines.join("\n") + "\n");
    runCli(opts.command ?? "twed", [
      "matrix", input, "-o", output, ...paramArgs(opts),
    ]);
    return readFileSync(output, "utf8")
      .trim()
      .split("\n")
      .map((line) => line.split(",").map(Number));
  });
}
