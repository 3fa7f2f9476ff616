// The view model is a direct projection of server state. Readiness and
// ordering always come from the session payload; the client never derives
// them itself.

import type { ExpansionItem, SessionState } from "./types.js";

export interface CurrentResource {
  id: string;
  uri: string;
  title: string;
}

export interface ExpansionPanel {
  forId: string;
  items: ExpansionItem[];
  reason: string | null;
}

export interface SessionViewModel {
  sessionId: string;
  pending: { id: string; title: string; ready: boolean; time: number; uri: string }[];
  consulted: { id: string; title: string; uri: string }[];
  current: CurrentResource | null;
  remainingTime: number | null;
  expansion: ExpansionPanel | null;
  error: string | null;
}

export function buildViewModel(
  session: SessionState,
  current: CurrentResource | null = null,
  expansion: ExpansionPanel | null = null,
  error: string | null = null,
): SessionViewModel {
  const pendingIds = new Set(session.pending.map((step) => step.id));
  for (const item of session.consulted) {
    if (pendingIds.has(item.id)) {
      throw new Error(`server sent ${item.id} as both pending and consulted`);
    }
  }
  return {
    sessionId: session.id,
    pending: session.pending.map(({ id, title, ready, time, uri }) => ({
      id,
      title,
      ready,
      time,
      uri,
    })),
    consulted: session.consulted.map(({ id, title, uri }) => ({ id, title, uri })),
    current,
    remainingTime: session.remaining_time,
    expansion,
    error,
  };
}
