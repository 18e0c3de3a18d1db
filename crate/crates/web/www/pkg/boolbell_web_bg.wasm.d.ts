/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_picture_free: (a: number, b: number) => void;
export const analyzeFunction: (a: number, b: number, c: number) => [number, number, number, number];
export const maxViolation: (a: number, b: number, c: number) => [number, number, number, number];
export const picture_describe: (a: number, b: number, c: number) => [number, number];
export const picture_legend: (a: number) => [number, number];
export const picture_rgba: (a: number) => [number, number];
export const picture_side: (a: number) => number;
export const renderGrid: (a: number, b: number, c: number) => [number, number, number];
export const violationAt: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
