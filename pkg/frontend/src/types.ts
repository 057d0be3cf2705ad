export type Kind = 'term' | 'pattern' | 'pair';
export type Status = 'pending' | 'accepted' | 'rejected';
export type Verdict = 'accepted' | 'rejected';

export interface PatternSupport {
  doc: string;
  sentence: number;
  text: string;
}

export interface PairSource {
  doc: string;
  sentence: number;
  tokens: string[];
  span1: [number, number];
  span2: [number, number];
  pattern: string;
}

export interface TermProvenance {
  doc: string;
  start: number;
  end: number;
  tokens: string[];
  span: [number, number];
}

export interface Item {
  id: string;
  kind: Kind;
  status: Status;
  score: number;
  payload: {
    display?: string;
    relation?: string;
    term1?: string;
    term2?: string;
    surface?: string;
    pattern?: string;
    support?: PatternSupport[] | number;
    sources?: PairSource[];
    provenance?: TermProvenance[];
  };
  decided_at?: string | null;
  decided_by?: string | null;
}

export interface IterateSummary {
  new_candidates: number;
  iteration: number;
}

export interface StoreStatus {
  iteration: number;
  items: Record<Status, number>;
  engine?: string | null;
}
