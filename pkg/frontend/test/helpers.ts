import { execFileSync } from "node:child_process";

/**
 * Computes reference results with the Python library directly (not the
 * CLI), so parity tests compare two independent routes to the kernel.
 */
const PY_REFERENCE = `
import json, sys
import numpy as np
from twed import TimeSeries, TwedParams, twed
from twed.dataset import Dataset, distance_matrix

payload = json.load(sys.stdin)

def series(obj, dim):
    values = np.array(obj["values"], dtype=np.float64).reshape(-1, dim)
    return TimeSeries(values, np.array(obj["times"], dtype=np.float64), dim=dim)

def params(obj):
    return TwedParams(lam=obj["lambda"], gamma=obj["gamma"], norm_p=float(obj["normP"]))

out = {"distances": [], "matrices": []}
for pair in payload.get("pairs", []):
    A = series(pair["a"], pair["dim"])
    B = series(pair["b"], pair["dim"])
    out["distances"].append(twed(A, B, params(pair)))
for ds in payload.get("datasets", []):
    items = tuple((None, series(s, ds["dim"])) for s in ds["series"])
    M = distance_matrix(Dataset("ref", items, "json"), params(ds))
    out["matrices"].append(M.tolist())
json.dump(out, sys.stdout)
`;

export interface RefSeries {
  values: number[];
  times: number[];
}

export interface RefPayload {
  pairs?: { a: RefSeries; b: RefSeries; dim: number; lambda: number; gamma: number; normP: string }[];
  datasets?: { series: RefSeries[]; dim: number; lambda: number; gamma: number; normP: string }[];
}

export function pythonReference(payload: RefPayload): {
  distances: number[];
  matrices: number[][][];
} {
  const out = execFileSync("python3", ["-c", PY_REFERENCE], {
    input: JSON.stringify(payload),
    encoding: "utf8",
  });
  return JSON.parse(out);
}

/** Deterministic RNG so failures replay (mulberry32). */
export function rng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomSeries(rand: () => number, length: number, dim: number): RefSeries {
  const times: number[] = [];
  let t = 0;
  for (let i = 0; i < length; i++) {
    t += 0.1 + rand();
    times.push(t);
  }
  const values: number[] = [];
  for (let i = 0; i < length * dim; i++) values.push(rand() * 4 - 2);
  return { values, times };
}
