/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_phasespacedemo_free: (a: number, b: number) => void;
export const advect_demo: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const phasespacedemo_advance: (a: number, b: number) => [number, number, number];
export const phasespacedemo_deviations: (a: number) => [number, number];
export const phasespacedemo_distribution: (a: number) => [number, number];
export const phasespacedemo_efield: (a: number) => [number, number];
export const phasespacedemo_field_history: (a: number) => [number, number];
export const phasespacedemo_field_norm: (a: number) => number;
export const phasespacedemo_length: (a: number) => number;
export const phasespacedemo_new: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const phasespacedemo_nv: (a: number) => number;
export const phasespacedemo_nx: (a: number) => number;
export const phasespacedemo_steps: (a: number) => number;
export const phasespacedemo_time: (a: number) => number;
export const phasespacedemo_v_max: (a: number) => number;
export const weno_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const weno_probe: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
