/* tslint:disable */
/* eslint-disable */

/**
 * Rows `[t, x, y]` along the orbit through `(x, y)`.
 */
export function orbit(flow: string, x: number, y: number, t_lo: number, t_hi: number, steps: number): Float64Array;

/**
 * Rows `[x, y]` of the two overlay curves: `which` is `"c0"` or `"pi"`.
 */
export function overlay(which: string, lo: number, hi: number, n: number): Float64Array;

/**
 * Rows `[x, y, sign]`; `sign` is NaN where the flow is undefined or not real.
 */
export function sign_grid(flow: string, lo: number, hi: number, n: number): Float64Array;

/**
 * `[re, im, error bound]` of `sm`, `cm`, `sp`, `cp` or `W` at `re + i·im`; infinities come back as `inf`.
 */
export function special(func: string, re: number, im: number): Float64Array;

/**
 * Rows `[x, y, u, v]` with `(u, v)` the unit direction of the field.
 */
export function vector_field(flow: string, lo: number, hi: number, n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly orbit: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly overlay: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly sign_grid: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly special: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly vector_field: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
