// Page wiring: connects the DOM controls to the tuning store and the
// compare view. All protocol and state logic lives in api.ts/state.ts.

import { ApiError, Client } from './api';
import { CompareView } from './compare';
import { FieldError, TuningStore, type SliderName } from './state';

const SLIDERS: { name: SliderName; label: string }[] = [
  { name: 'alpha', label: 'exposure strength' },
  { name: 'gamma', label: 'gamma' },
  { name: 'th', label: 'denoise threshold' },
  { name: 'lv', label: 'denoise level' },
];

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element as T;
}

const fileInput = byId<HTMLInputElement>('file-input');
const errorBanner = byId<HTMLDivElement>('error-banner');
const retryButton = byId<HTMLButtonElement>('retry-button');
const sliderRows = byId<HTMLDivElement>('slider-rows');
const manualToggle = byId<HTMLInputElement>('manual-alphas-toggle');
const alphaInputs = byId<HTMLDivElement>('alpha-inputs');
const alphasError = byId<HTMLDivElement>('alphas-error');
const levelsInput = byId<HTMLInputElement>('levels-input');
const levelsError = byId<HTMLDivElement>('levels-error');
const denoiseToggle = byId<HTMLInputElement>('denoise-toggle');
const enhanceButton = byId<HTMLButtonElement>('enhance-button');
const downloadLink = byId<HTMLAnchorElement>('download-link');
const originalView = byId<HTMLImageElement>('original-view');
const previewView = byId<HTMLImageElement>('preview-view');
const previewCaption = byId<HTMLElement>('preview-caption');
const compareSlot = byId<HTMLElement>('compare-slot');

let originalUrl = '';
let previewUrl = '';
let resultUrl = '';

function showBanner(message: string): void {
  errorBanner.textContent = message;
  errorBanner.hidden = false;
}

function hideBanner(): void {
  errorBanner.hidden = true;
  retryButton.hidden = true;
}

function clearFieldErrors(): void {
  alphasError.textContent = '';
  levelsError.textContent = '';
  for (const row of sliderRows.querySelectorAll('.field-error')) {
    row.textContent = '';
  }
}

function showFieldError(field: string, message: string): void {
  if (field === 'alphas') {
    alphasError.textContent = message;
  } else if (field === 'levels') {
    levelsError.textContent = message;
  } else {
    const row = sliderRows.querySelector(`[data-param="${field}"] .field-error`);
    if (row) row.textContent = message;
    else showBanner(message);
  }
}

const compare = new CompareView(compareSlot);

const store = new TuningStore(new Client(), {
  onPreview: (result) => {
    const url = URL.createObjectURL(result.blob);
    previewView.src = url;
    if (previewUrl) URL.revokeObjectURL(previewUrl);
    previewUrl = url;
    previewCaption.textContent =
      result.elapsedMs === null ? 'preview' : `preview (${result.elapsedMs.toFixed(1)} ms)`;
    hideBanner();
  },
  onError: (error) => {
    if (error instanceof ApiError && error.fields.length > 0) {
      for (const field of error.fields) showFieldError(field, error.message);
      return;
    }
    // network failures keep the sliders live and offer a manual retry
    showBanner(error instanceof ApiError ? error.message : 'preview request failed');
    retryButton.hidden = false;
  },
  onBusy: (busy) => {
    document.body.classList.toggle('busy', busy);
  },
});

function buildSliderRow(name: SliderName, label: string): void {
  const [lo, hi] = store.range(name);
  const row = document.createElement('div');
  row.className = 'slider-row';
  row.dataset.param = name;

  const caption = document.createElement('label');
  const text = document.createElement('span');
  text.textContent = label;
  const value = document.createElement('span');
  value.className = 'value';
  value.textContent = store.params[name].toFixed(2);
  caption.appendChild(text);
  caption.appendChild(value);

  const input = document.createElement('input');
  input.type = 'range';
  input.min = String(lo);
  input.max = String(hi);
  input.step = '0.01';
  input.value = String(store.params[name]);
  input.addEventListener('input', () => {
    const applied = store.setParam(name, Number(input.value));
    value.textContent = applied.toFixed(2);
  });

  const fieldError = document.createElement('div');
  fieldError.className = 'field-error';

  row.appendChild(caption);
  row.appendChild(input);
  row.appendChild(fieldError);
  sliderRows.appendChild(row);
}

function buildAlphaInputs(alphas: number[]): void {
  alphaInputs.replaceChildren();
  for (const alpha of alphas) {
    const input = document.createElement('input');
    input.type = 'number';
    input.step = '0.01';
    input.value = String(alpha);
    input.addEventListener('change', applyManualAlphas);
    alphaInputs.appendChild(input);
  }
}

function applyManualAlphas(): void {
  alphasError.textContent = '';
  if (!manualToggle.checked) {
    store.setManualAlphas(null);
    return;
  }
  const values = Array.from(alphaInputs.querySelectorAll('input')).map((input) =>
    Number(input.value)
  );
  try {
    store.setManualAlphas(values);
  } catch (error) {
    if (error instanceof FieldError) showFieldError(error.field, error.message);
    else throw error;
  }
}

fileInput.addEventListener('change', async () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  hideBanner();
  try {
    await store.loadImage(file);
  } catch (error) {
    showBanner(error instanceof ApiError ? error.message : 'upload failed');
    return;
  }
  if (originalUrl) URL.revokeObjectURL(originalUrl);
  originalUrl = URL.createObjectURL(file);
  originalView.src = originalUrl;
  enhanceButton.disabled = false;
  compareSlot.hidden = true;
  downloadLink.hidden = true;
});

retryButton.addEventListener('click', () => {
  hideBanner();
  store.retryPreview();
});

manualToggle.addEventListener('change', applyManualAlphas);

levelsInput.addEventListener('change', () => {
  levelsError.textContent = '';
  try {
    store.setLevels(Number(levelsInput.value));
  } catch (error) {
    if (error instanceof FieldError) showFieldError(error.field, error.message);
    else throw error;
  }
});

denoiseToggle.addEventListener('change', () => {
  store.denoise = denoiseToggle.checked;
});

enhanceButton.addEventListener('click', async () => {
  clearFieldErrors();
  enhanceButton.disabled = true;
  try {
    const { blob } = await store.fullEnhance();
    if (resultUrl) URL.revokeObjectURL(resultUrl);
    resultUrl = URL.createObjectURL(blob);
    compare.setImages(originalUrl, resultUrl);
    compare.setSplit(0.5);
    compareSlot.hidden = false;
    downloadLink.href = resultUrl;
    downloadLink.hidden = false;
  } catch (error) {
    if (error instanceof FieldError) {
      showFieldError(error.field, error.message);
    } else if (error instanceof ApiError && error.fields.length > 0) {
      for (const field of error.fields) showFieldError(field, error.message);
    } else {
      showBanner(error instanceof Error ? error.message : 'enhance failed');
    }
  } finally {
    enhanceButton.disabled = false;
  }
});

async function start(): Promise<void> {
  try {
    const defaults = await store.init();
    for (const { name, label } of SLIDERS) buildSliderRow(name, label);
    buildAlphaInputs(defaults.alphas);
    levelsInput.value = String(defaults.levels);
  } catch {
    showBanner('could not reach the enhancement service');
  }
}

void start();
