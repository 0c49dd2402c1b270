// Client-side tuning state: slider clamping against the served ranges,
// debounced preview requests, and latest-wins resolution of responses.

import type {
  Defaults,
  EnhanceConfig,
  PreviewResult,
  ServiceApi,
  UploadedImage,
} from './api';

export type SliderName = 'alpha' | 'gamma' | 'th' | 'lv';

// under the 100 ms budget so dragging a slider feels continuous
export const DEBOUNCE_MS = 80;

export function clampToRange(value: number, range: [number, number]): number {
  return Math.min(range[1], Math.max(range[0], value));
}

// One slider drives three exposure strengths. The ratios are chosen so
// the default 0.25 lands exactly on [0.15, 0.6, 0.85]; every entry is
// clamped so the request stays inside the served range.
export function alphaSpread(
  alpha: number,
  range: [number, number]
): [number, number, number] {
  return [
    clampToRange(alpha * 0.6, range),
    clampToRange(alpha * 2.4, range),
    clampToRange(alpha * 3.4, range),
  ];
}

// invalid manual input is reported against its control and never sent
export class FieldError extends Error {
  constructor(readonly field: string, message: string) {
    super(message);
    this.name = 'FieldError';
  }
}

export interface StoreEvents {
  onPreview?: (result: PreviewResult, params: Record<SliderName, number>) => void;
  onError?: (error: Error) => void;
  onBusy?: (busy: boolean) => void;
}

export class TuningStore {
  defaults: Defaults | null = null;
  image: UploadedImage | null = null;
  params: Record<SliderName, number> = { alpha: 0.25, gamma: 0.6, th: 0.7, lv: 1.5 };
  manualAlphas: number[] | null = null;
  levels = 4;
  denoise = true;

  private seq = 0;
  private applied = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;

  constructor(
    private readonly client: ServiceApi,
    private readonly events: StoreEvents = {},
    private readonly debounceMs = DEBOUNCE_MS
  ) {}

  async init(): Promise<Defaults> {
    const defaults = await this.client.defaults();
    this.defaults = defaults;
    this.params = {
      alpha: defaults.preview_alpha,
      gamma: defaults.gamma,
      th: defaults.th,
      lv: defaults.lv,
    };
    this.levels = defaults.levels;
    return defaults;
  }

  // upload failures propagate before any state changes; a second load
  // replaces the previous session id
  async loadImage(data: Blob): Promise<UploadedImage> {
    const image = await this.client.upload(data);
    this.image = image;
    this.schedulePreview();
    return image;
  }

  range(name: SliderName): [number, number] {
    if (!this.defaults) throw new Error('defaults not loaded');
    return this.defaults.ranges[name];
  }

  setParam(name: SliderName, value: number): number {
    const clamped = clampToRange(value, this.range(name));
    this.params[name] = clamped;
    this.schedulePreview();
    return clamped;
  }

  schedulePreview(): void {
    if (!this.image) return;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.issuePreview();
    }, this.debounceMs);
  }

  retryPreview(): void {
    void this.issuePreview();
  }

  private async issuePreview(): Promise<void> {
    if (!this.image) return;
    // supersede any in-flight request so at most one is live
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const seq = ++this.seq;
    const params = { ...this.params };
    this.events.onBusy?.(true);
    try {
      const result = await this.client.preview(this.image.id, params, controller.signal);
      // a response that lost the race to a newer one is discarded
      if (seq > this.applied) {
        this.applied = seq;
        this.events.onPreview?.(result, params);
      }
    } catch (error) {
      if (!controller.signal.aborted) this.events.onError?.(error as Error);
    } finally {
      if (this.controller === controller) {
        this.controller = null;
        this.events.onBusy?.(false);
      }
    }
  }

  // null returns to the derived spread; explicit values are validated
  // here so an out-of-range alpha never reaches the wire
  setManualAlphas(values: number[] | null): void {
    if (values !== null) {
      const range = this.range('alpha');
      if (values.length === 0) {
        throw new FieldError('alphas', 'at least one exposure strength is required');
      }
      for (const value of values) {
        if (!Number.isFinite(value) || value < range[0] || value > range[1]) {
          throw new FieldError(
            'alphas',
            `exposure strength ${value} is outside [${range[0]}, ${range[1]}]`
          );
        }
      }
      this.manualAlphas = [...values];
    } else {
      this.manualAlphas = null;
    }
  }

  setLevels(levels: number): void {
    if (!Number.isInteger(levels) || levels < 1) {
      throw new FieldError('levels', 'levels must be a positive integer');
    }
    this.levels = levels;
  }

  enhanceConfig(): EnhanceConfig {
    const alphas = this.manualAlphas ?? alphaSpread(this.params.alpha, this.range('alpha'));
    return {
      alphas: [...alphas],
      gamma: this.params.gamma,
      th: this.params.th,
      lv: this.params.lv,
      levels: this.levels,
      denoise: this.denoise,
    };
  }

  async fullEnhance(): Promise<{ blob: Blob; config: EnhanceConfig }> {
    if (!this.image) throw new Error('no image loaded');
    const config = this.enhanceConfig();
    const blob = await this.client.enhance(this.image.id, config);
    return { blob, config };
  }
}
