import type { Item, IterateSummary, Kind, Status, StoreStatus, Verdict } from './types.js';

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, `service unreachable: ${String(err)}`);
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === 'string') detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return response.json() as Promise<T>;
}

/** Typed client for the validation API; performs no candidate computation. */
export class ApiClient {
  constructor(private base = '') {}

  listItems(filter: { kind?: Kind; status?: Status } = {}): Promise<Item[]> {
    const params = new URLSearchParams();
    if (filter.kind) params.set('kind', filter.kind);
    if (filter.status) params.set('status', filter.status);
    const query = params.toString();
    return request<Item[]>(`${this.base}/api/items${query ? `?${query}` : ''}`);
  }

  decide(id: string, verdict: Verdict, who: string): Promise<Item> {
    return request<Item>(`${this.base}/api/items/${id}/decision`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ verdict, who }),
    });
  }

  iterate(): Promise<IterateSummary> {
    return request<IterateSummary>(`${this.base}/api/iterate`, { method: 'POST' });
  }

  status(): Promise<StoreStatus> {
    return request<StoreStatus>(`${this.base}/api/status`);
  }
}
