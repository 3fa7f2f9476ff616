// Session controller. Every mutation round-trips through the API and the
// next view model is rebuilt from the server's response; nothing is updated
// optimistically, so the panes always show confirmed server state.

import { ApiClient } from "./client.js";
import type { SessionState } from "./types.js";
import {
  buildViewModel,
  type CurrentResource,
  type ExpansionPanel,
  type SessionViewModel,
} from "./viewmodel.js";

export class SessionApp {
  private session: SessionState | null = null;
  private current: CurrentResource | null = null;
  private expansion: ExpansionPanel | null = null;
  private error: string | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly onChange: (vm: SessionViewModel) => void = () => {},
  ) {}

  get viewModel(): SessionViewModel {
    if (!this.session) {
      throw new Error("no session loaded");
    }
    return buildViewModel(this.session, this.current, this.expansion, this.error);
  }

  private emit(): SessionViewModel {
    const vm = this.viewModel;
    this.onChange(vm);
    return vm;
  }

  async load(sessionId: string): Promise<SessionViewModel> {
    this.session = await this.client.getSession(sessionId);
    this.current = null;
    this.expansion = null;
    this.error = null;
    return this.emit();
  }

  async start(body: Parameters<ApiClient["createSession"]>[0]): Promise<SessionViewModel> {
    this.session = await this.client.createSession(body);
    this.current = null;
    this.expansion = null;
    this.error = null;
    return this.emit();
  }

  /** Show a pending or consulted resource in the reading pane. */
  openResource(id: string): SessionViewModel {
    const step =
      this.session?.pending.find((s) => s.id === id) ??
      this.session?.consulted.find((s) => s.id === id);
    if (!step) {
      this.error = `unknown resource ${id}`;
      return this.emit();
    }
    this.current = { id: step.id, uri: step.uri, title: step.title };
    this.error = null;
    return this.emit();
  }

  /** Closing a resource marks it consulted on the server, then re-renders
   * from the response. On failure the panes stay as they were. */
  async closeResource(id: string): Promise<SessionViewModel> {
    if (!this.session) throw new Error("no session loaded");
    try {
      this.session = await this.client.markConsulted(this.session.id, id);
      if (this.current?.id === id) {
        this.current = null;
      }
      this.error = null;
    } catch (err) {
      this.error = `could not mark ${id} consulted: ${(err as Error).message}`;
    }
    return this.emit();
  }

  /** Ask the server for conceptually related material. */
  async more(id: string): Promise<SessionViewModel> {
    if (!this.session) throw new Error("no session loaded");
    try {
      const response = await this.client.more(this.session.id, id);
      this.expansion = { forId: id, items: response.items, reason: response.reason };
      this.error = null;
    } catch (err) {
      this.error = `expansion failed: ${(err as Error).message}`;
    }
    return this.emit();
  }

  /** Adopt an expansion result, then refresh both the session and the
   * expansion panel from the server. */
  async adopt(id: string): Promise<SessionViewModel> {
    if (!this.session) throw new Error("no session loaded");
    const panelFor = this.expansion?.forId;
    try {
      this.session = await this.client.adopt(this.session.id, id);
      if (panelFor) {
        const refreshed = await this.client.more(this.session.id, panelFor);
        this.expansion = { forId: panelFor, items: refreshed.items, reason: refreshed.reason };
      }
      this.error = null;
    } catch (err) {
      this.error = `adoption failed: ${(err as Error).message}`;
    }
    return this.emit();
  }
}
