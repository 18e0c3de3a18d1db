/* tslint:disable */
/* eslint-disable */

/**
 * A rendered grid with its colors.
 */
export class Picture {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Function index and metric value shown in 1-based cell `(i, j)`.
     */
    describe(i: number, j: number): string;
    /**
     * `value,r,g,b` rows.
     */
    legend(): string;
    /**
     * Row-major RGBA bytes, one pixel per cell, ready for `ImageData`.
     */
    rgba(): Uint8Array;
    /**
     * Cells per side.
     */
    side(): number;
}

export function analyzeFunction(n: number, index: string): string;

export function maxViolation(n: number, index: string): string;

export function renderGrid(n: number, metric: string): Picture;

export function violationAt(n: number, index: string, phases: Float64Array): number;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_picture_free: (a: number, b: number) => void;
    readonly analyzeFunction: (a: number, b: number, c: number) => [number, number, number, number];
    readonly maxViolation: (a: number, b: number, c: number) => [number, number, number, number];
    readonly picture_describe: (a: number, b: number, c: number) => [number, number];
    readonly picture_legend: (a: number) => [number, number];
    readonly picture_rgba: (a: number) => [number, number];
    readonly picture_side: (a: number) => number;
    readonly renderGrid: (a: number, b: number, c: number) => [number, number, number];
    readonly violationAt: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
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
