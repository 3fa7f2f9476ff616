// Browser entry point. Reads ?session=<id> to resume an existing session,
// or creates one from the demo profile form.

import { SessionApp } from "./app.js";
import { ApiClient } from "./client.js";
import { mount } from "./dom.js";
import { renderSession, type ViewHandlers } from "./view.js";
import type { SessionViewModel } from "./viewmodel.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}

const client = new ApiClient("");
const app = new SessionApp(client, (vm) => redraw(vm));

const handlers: ViewHandlers = {
  onOpen: (id) => app.openResource(id),
  onReopen: (id) => app.openResource(id),
  onClose: (id) => void app.closeResource(id),
  onMore: (id) => void app.more(id),
  onAdopt: (id) => void app.adopt(id),
};

function redraw(vm: SessionViewModel): void {
  mount(root as HTMLElement, renderSession(vm, handlers));
}

const params = new URLSearchParams(window.location.search);
const sessionId = params.get("session");

async function boot(): Promise<void> {
  if (sessionId) {
    await app.load(sessionId);
    return;
  }
  const objective = params.get("objective");
  if (!objective) {
    (root as HTMLElement).textContent =
      "Pass ?session=<id> to resume, or ?objective=TYPE[,TYPE...]&budget=MIN to start.";
    return;
  }
  const budget = params.get("budget");
  await app.start({
    profile: {
      known: [],
      objective: objective.split(",").map((source) => ({ source })),
      time_budget: budget ? Number(budget) : null,
    },
    strategy: "backward",
  });
}

boot().catch((err) => {
  (root as HTMLElement).textContent = `failed to start: ${err}`;
});
