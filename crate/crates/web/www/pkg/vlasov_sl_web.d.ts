/* tslint:disable */
/* eslint-disable */

export class PhaseSpaceDemo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Takes up to `steps` steps and returns the new time.
     */
    advance(steps: number): number;
    /**
     * Relative deviations of L¹, L², energy and entropy.
     */
    deviations(): Float64Array;
    /**
     * `f` with `v` fastest: index `i * nv + j`.
     */
    distribution(): Float64Array;
    efield(): Float64Array;
    /**
     * Interleaved `(t, ‖E‖₂)` pairs, one per step.
     */
    field_history(): Float64Array;
    /**
     * Current `‖E‖₂`.
     */
    field_norm(): number;
    length(): number;
    /**
     * `problem` is one of `two_stream`, `weak_landau`, `strong_landau`,
     * `symmetric_two_stream`; the grid is `n × n`.
     */
    constructor(problem: string, n: number, cfl: number, order: number, interp: number);
    nv(): number;
    nx(): number;
    steps(): number;
    time(): number;
    v_max(): number;
}

/**
 * Advects `shape` (`sine`, `gauss`, `square`) at unit speed on `[0, 2π)`
 * for `periods` periods. Returns `n` computed values, `n` exact values,
 * then the mean absolute error and the largest mass drift.
 */
export function advect_demo(shape: string, n: number, cfl: number, periods: number): Float64Array;

/**
 * WENO6 and Lagrange values at `samples` evenly spaced `ξ` in `[-1, 0]`,
 * interleaved as `(ξ, weno, lagrange)`.
 */
export function weno_curve(values: Float64Array, eps: number, samples: number): Float64Array;

/**
 * WENO6 internals at `ξ ∈ [-1, 0]` for nodes `f_{i-3} … f_{i+2}`:
 * candidates `p₀..p₂`, `γ`, `β`, `ω` (three each), then the WENO value and
 * the degree-5 Lagrange value; 14 numbers.
 */
export function weno_probe(values: Float64Array, xi: number, eps: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_phasespacedemo_free: (a: number, b: number) => void;
    readonly advect_demo: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly phasespacedemo_advance: (a: number, b: number) => [number, number, number];
    readonly phasespacedemo_deviations: (a: number) => [number, number];
    readonly phasespacedemo_distribution: (a: number) => [number, number];
    readonly phasespacedemo_efield: (a: number) => [number, number];
    readonly phasespacedemo_field_history: (a: number) => [number, number];
    readonly phasespacedemo_field_norm: (a: number) => number;
    readonly phasespacedemo_length: (a: number) => number;
    readonly phasespacedemo_new: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly phasespacedemo_nv: (a: number) => number;
    readonly phasespacedemo_nx: (a: number) => number;
    readonly phasespacedemo_steps: (a: number) => number;
    readonly phasespacedemo_time: (a: number) => number;
    readonly phasespacedemo_v_max: (a: number) => number;
    readonly weno_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly weno_probe: (a: number, b: number, c: number, d: number) => [number, number, number, number];
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
