// Wire types for the session service JSON contract.

export interface VectorEntry {
  source: string;
  source_ref?: string;
  predicate?: string;
  destination?: string;
  destination_ref?: string;
  weight?: number;
}

export interface PendingStep {
  id: string;
  title: string;
  uri: string;
  time: number;
  ready: boolean;
}

export interface ConsultedItem {
  id: string;
  title: string;
  uri: string;
}

export interface SessionState {
  id: string;
  strategy: string;
  created_at: number;
  status: string;
  total_time: number;
  within_budget: boolean;
  time_budget: number | null;
  remaining_time: number | null;
  pending: PendingStep[];
  consulted: ConsultedItem[];
  residual_objective: VectorEntry[];
  warnings: string[];
}

export interface ReadinessReport {
  steps: { id: string; ready: boolean }[];
}

export interface ExpansionItem {
  id: string;
  cp: number;
  time: number;
  title: string;
  uri: string;
}

export interface ExpansionResponse {
  items: ExpansionItem[];
  reason: string | null;
}

export interface ProfileBody {
  known: VectorEntry[];
  objective: VectorEntry[];
  time_budget: number | null;
}

export interface CreateSessionBody {
  profile: ProfileBody;
  strategy: string;
  strategy_args?: Record<string, unknown>;
}
