import { ApiClient, ApiError } from './api.js';
import { renderCard, renderEmptyState } from './render.js';
import type { Item, Kind, Status, Verdict } from './types.js';

const STATUSES: Status[] = ['pending', 'accepted', 'rejected'];
const KINDS: Array<Kind | 'all'> = ['all', 'term', 'pattern', 'pair'];

export class Console {
  private status: Status = 'pending';
  private kind: Kind | 'all' = 'all';
  private items: Item[] = [];
  private reviewer = 'expert';

  private banner!: HTMLElement;
  private notice!: HTMLElement;
  private queue!: HTMLElement;
  private tabs = new Map<Status, HTMLButtonElement>();
  private iterateButton!: HTMLButtonElement;
  private iterationLabel!: HTMLElement;

  constructor(private root: HTMLElement, private api: ApiClient) {
    this.build();
    root.addEventListener('keydown', (event) => this.onKey(event as KeyboardEvent));
  }

  async start(): Promise<void> {
    await this.refresh();
  }

  private build(): void {
    this.root.innerHTML = '';
    this.banner = document.createElement('div');
    this.banner.className = 'banner hidden';
    this.root.appendChild(this.banner);

    const toolbar = document.createElement('div');
    toolbar.className = 'toolbar';

    for (const status of STATUSES) {
      const tab = document.createElement('button');
      tab.className = 'tab';
      tab.dataset.status = status;
      tab.textContent = status;
      tab.addEventListener('click', () => {
        this.status = status;
        void this.refresh();
      });
      this.tabs.set(status, tab);
      toolbar.appendChild(tab);
    }

    const filter = document.createElement('select');
    filter.className = 'kind-filter';
    for (const kind of KINDS) {
      const option = document.createElement('option');
      option.value = kind;
      option.textContent = kind;
      filter.appendChild(option);
    }
    filter.addEventListener('change', () => {
      this.kind = filter.value as Kind | 'all';
      void this.refresh();
    });
    toolbar.appendChild(filter);

    this.iterateButton = document.createElement('button');
    this.iterateButton.className = 'iterate';
    this.iterateButton.textContent = 'Iterate';
    this.iterateButton.addEventListener('click', () => void this.iterate());
    toolbar.appendChild(this.iterateButton);

    this.iterationLabel = document.createElement('span');
    this.iterationLabel.className = 'iteration';
    toolbar.appendChild(this.iterationLabel);

    this.notice = document.createElement('div');
    this.notice.className = 'notice hidden';

    this.queue = document.createElement('div');
    this.queue.className = 'queue';

    this.root.appendChild(toolbar);
    this.root.appendChild(this.notice);
    this.root.appendChild(this.queue);
  }

  private async refresh(): Promise<void> {
    try {
      const filter: { kind?: Kind; status: Status } = { status: this.status };
      if (this.kind !== 'all') filter.kind = this.kind;
      this.items = await this.api.listItems(filter);
      const status = await this.api.status();
      this.iterationLabel.textContent = `iteration ${status.iteration}`;
      this.hideBanner();
    } catch (err) {
      this.showBanner(err);
      return;
    }
    this.renderQueue();
  }

  private renderQueue(): void {
    this.queue.innerHTML = '';
    for (const tab of this.tabs.values()) {
      tab.classList.toggle('active', tab.dataset.status === this.status);
    }
    if (this.items.length === 0) {
      this.queue.appendChild(renderEmptyState(this.status));
      return;
    }
    for (const item of this.items) {
      this.queue.appendChild(renderCard(item, {
        onDecide: (target, verdict) => void this.decide(target, verdict),
      }));
    }
  }

  /** Optimistic update: the card flips immediately, a 409 rolls it back. */
  private async decide(item: Item, verdict: Verdict): Promise<void> {
    const snapshot = this.items.slice();
    this.items = this.items.filter((i) => i.id !== item.id);
    this.renderQueue();
    try {
      await this.api.decide(item.id, verdict, this.reviewer);
    } catch (err) {
      this.items = snapshot;
      this.renderQueue();
      if (err instanceof ApiError && err.status === 409) {
        this.showNotice(`decision conflict: ${err.message}`);
        await this.refresh();
        return;
      }
      this.showBanner(err);
      return;
    }
    await this.refresh();
  }

  private async iterate(): Promise<void> {
    this.iterateButton.disabled = true;
    this.iterateButton.textContent = 'Running…';
    try {
      const summary = await this.api.iterate();
      this.showNotice(`${summary.new_candidates} new candidates`);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.showNotice('an iteration is already running');
      } else {
        this.showBanner(err);
      }
      return;
    } finally {
      this.iterateButton.disabled = false;
      this.iterateButton.textContent = 'Iterate';
    }
    await this.refresh();
  }

  private onKey(event: KeyboardEvent): void {
    if (this.status !== 'pending' || this.items.length === 0) return;
    if (event.key !== 'a' && event.key !== 'r') return;
    const focused = document.activeElement as HTMLElement | null;
    const id = focused?.dataset?.id ?? this.items[0].id;
    const item = this.items.find((i) => i.id === id);
    if (!item) return;
    void this.decide(item, event.key === 'a' ? 'accepted' : 'rejected');
  }

  private showBanner(err: unknown): void {
    const message = err instanceof Error ? err.message : String(err);
    this.banner.textContent = `service unavailable: ${message}`;
    this.banner.classList.remove('hidden');
  }

  private hideBanner(): void {
    this.banner.classList.add('hidden');
  }

  private showNotice(message: string): void {
    this.notice.textContent = message;
    this.notice.classList.remove('hidden');
  }
}

export function mountConsole(root: HTMLElement, api = new ApiClient()): Console {
  return new Console(root, api);
}
