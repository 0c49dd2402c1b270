// Typed client for the enhancement service. Every request the UI makes
// goes through this module, so the four endpoints below are the whole
// surface area between browser and server.

export interface ParamRanges {
  alpha: [number, number];
  gamma: [number, number];
  th: [number, number];
  lv: [number, number];
}

export interface Defaults {
  alphas: number[];
  gamma: number;
  th: number;
  lv: number;
  levels: number;
  preview_alpha: number;
  ranges: ParamRanges;
}

export interface UploadedImage {
  id: string;
  width: number;
  height: number;
}

export interface PreviewParams {
  alpha: number;
  gamma: number;
  th: number;
  lv: number;
}

export interface EnhanceConfig {
  alphas: number[];
  gamma: number;
  th: number;
  lv: number;
  levels: number;
  denoise: boolean;
}

export interface PreviewResult {
  blob: Blob;
  elapsedMs: number | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly fields: string[] = []
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

// validation errors carry a list of {loc: [where, field, ...], msg} entries
function fieldsFromDetail(detail: unknown): string[] {
  if (!Array.isArray(detail)) return [];
  const fields: string[] = [];
  for (const entry of detail) {
    const loc = (entry as { loc?: unknown }).loc;
    if (Array.isArray(loc) && loc.length >= 2 && typeof loc[1] === 'string') {
      fields.push(loc[1]);
    }
  }
  return fields;
}

async function toApiError(response: Response): Promise<ApiError> {
  let detail: unknown = null;
  try {
    detail = ((await response.json()) as { detail?: unknown }).detail;
  } catch {
    // non-JSON error body; fall through to the generic message
  }
  const fields = fieldsFromDetail(detail);
  let message: string;
  if (typeof detail === 'string') {
    message = detail;
  } else if (fields.length > 0) {
    message = `invalid value for ${fields.join(', ')}`;
  } else {
    message = `request failed with status ${response.status}`;
  }
  return new ApiError(response.status, message, fields);
}

export interface ServiceApi {
  defaults(): Promise<Defaults>;
  upload(data: Blob): Promise<UploadedImage>;
  preview(id: string, params: PreviewParams, signal?: AbortSignal): Promise<PreviewResult>;
  enhance(id: string, config: EnhanceConfig): Promise<Blob>;
}

export class Client implements ServiceApi {
  constructor(private readonly base = '') {}

  async defaults(): Promise<Defaults> {
    const response = await fetch(`${this.base}/api/defaults`);
    if (!response.ok) throw await toApiError(response);
    return (await response.json()) as Defaults;
  }

  async upload(data: Blob): Promise<UploadedImage> {
    const response = await fetch(`${this.base}/api/images`, {
      method: 'POST',
      body: data,
    });
    if (!response.ok) throw await toApiError(response);
    return (await response.json()) as UploadedImage;
  }

  async preview(
    id: string,
    params: PreviewParams,
    signal?: AbortSignal
  ): Promise<PreviewResult> {
    const query = new URLSearchParams({
      alpha: String(params.alpha),
      gamma: String(params.gamma),
      th: String(params.th),
      lv: String(params.lv),
    });
    const response = await fetch(
      `${this.base}/api/images/${id}/preview?${query}`,
      { signal }
    );
    if (!response.ok) throw await toApiError(response);
    const header = response.headers.get('x-elapsed-ms');
    return {
      blob: await response.blob(),
      elapsedMs: header === null ? null : Number(header),
    };
  }

  async enhance(id: string, config: EnhanceConfig): Promise<Blob> {
    const response = await fetch(`${this.base}/api/images/${id}/enhance`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(config),
    });
    if (!response.ok) throw await toApiError(response);
    return response.blob();
  }
}
