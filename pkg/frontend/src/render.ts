import type { Item, PairSource, TermProvenance } from './types.js';

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Sentence tokens with the candidate spans wrapped in <mark>. */
function highlighted(tokens: string[], spans: Array<[number, number]>): HTMLElement {
  const snippet = el('p', 'snippet');
  tokens.forEach((token, index) => {
    const inside = spans.some(([a, b]) => index >= a && index < b);
    const node = inside ? el('mark', undefined, token) : document.createTextNode(token);
    snippet.appendChild(node);
    snippet.appendChild(document.createTextNode(' '));
  });
  return snippet;
}

function title(item: Item): string {
  const p = item.payload;
  if (item.kind === 'pair') return `${p.term1} → ${p.term2} (${p.relation})`;
  if (item.kind === 'pattern') return `${p.display} (${p.relation})`;
  return p.surface ?? item.id;
}

function provenanceNodes(item: Item): HTMLElement[] {
  const p = item.payload;
  if (item.kind === 'pair' && Array.isArray(p.sources)) {
    return p.sources.map((s: PairSource) => highlighted(s.tokens, [s.span1, s.span2]));
  }
  if (item.kind === 'term' && Array.isArray(p.provenance)) {
    return p.provenance.map((s: TermProvenance) => highlighted(s.tokens, [s.span]));
  }
  if (item.kind === 'pattern' && Array.isArray(p.support)) {
    return p.support.map((s) => el('p', 'snippet', s.text));
  }
  return [];
}

export interface CardHandlers {
  onDecide: (item: Item, verdict: 'accepted' | 'rejected') => void;
}

export function renderCard(item: Item, handlers: CardHandlers): HTMLElement {
  const card = el('article', `card card-${item.kind} status-${item.status}`);
  card.dataset.id = item.id;
  card.tabIndex = 0;

  const header = el('header');
  header.appendChild(el('span', 'kind-badge', item.kind));
  header.appendChild(el('h3', 'card-title', title(item)));
  header.appendChild(el('span', 'score', `score ${item.score}`));
  card.appendChild(header);

  for (const snippet of provenanceNodes(item)) card.appendChild(snippet);

  if (item.status === 'pending') {
    const actions = el('div', 'actions');
    const accept = el('button', 'accept', 'Accept (a)') as HTMLButtonElement;
    accept.addEventListener('click', () => handlers.onDecide(item, 'accepted'));
    const reject = el('button', 'reject', 'Reject (r)') as HTMLButtonElement;
    reject.addEventListener('click', () => handlers.onDecide(item, 'rejected'));
    actions.appendChild(accept);
    actions.appendChild(reject);
    card.appendChild(actions);
  } else {
    card.appendChild(el('p', 'decision',
      `${item.status} by ${item.decided_by ?? '?'} at ${item.decided_at ?? '?'}`));
  }
  return card;
}

export function renderEmptyState(status: string): HTMLElement {
  return el('p', 'empty-state', `No ${status} items.`);
}
