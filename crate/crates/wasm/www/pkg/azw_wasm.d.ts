/* tslint:disable */
/* eslint-disable */

/**
 * Samples `source` on prime powers up to `limit` outside `exclude` and checks both
 * candidates. Returns the rows `{q, count, ceiling, floor}` (envelope values as floats,
 * for plotting only) and the two exact verdicts.
 */
export function envelope_table(source: string, exclude: string, limit: number, ceiling: string, floor: string, puiseux: boolean, witnesses: number): string;

/**
 * Envelopes, zeta products and the first counts of a monoid scheme given as JSON.
 */
export function monoid_summary(scheme_json: string, exclude: string): string;

/**
 * Suggested ceiling and floor for a source, as `{"ceiling": .., "floor": .., "puiseux": ..}`.
 */
export function suggested_envelopes(source: string, exclude: string): string;

/**
 * Zeta algebra: `op` is `soule` (argument: Puiseux polynomial in `t`), `tensor`
 * (two formal products in `s`) or `funceq` (one product and the centre `d`).
 */
export function zeta_op(op: string, first: string, second: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly envelope_table: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number) => [number, number, number, number];
    readonly monoid_summary: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly suggested_envelopes: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly zeta_op: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
