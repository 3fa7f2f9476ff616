// Pure rendering: view model in, node tree out. The tree is plain data so
// tests can query it without a DOM; dom.ts mounts it in the browser.

import type { SessionViewModel } from "./viewmodel.js";

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  on: Record<string, () => void>;
  children: (VNode | string)[];
}

export interface ViewHandlers {
  onOpen(id: string): void;
  onClose(id: string): void;
  onMore(id: string): void;
  onAdopt(id: string): void;
  onReopen(id: string): void;
}

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  children: (VNode | string)[] = [],
  on: Record<string, () => void> = {},
): VNode {
  return { tag, attrs, on, children };
}

export function renderSession(vm: SessionViewModel, handlers: ViewHandlers): VNode {
  return h("div", { class: "layout" }, [
    h("div", { class: "sidebar" }, [
      renderConsultedPane(vm, handlers),
      renderPendingPane(vm, handlers),
      renderRemainingTime(vm),
    ]),
    h("div", { class: "main" }, [
      renderCurrentPane(vm, handlers),
      renderExpansionPanel(vm, handlers),
      ...(vm.error ? [h("div", { class: "error-banner" }, [vm.error])] : []),
    ]),
  ]);
}

function renderPendingPane(vm: SessionViewModel, handlers: ViewHandlers): VNode {
  if (vm.pending.length === 0 && vm.consulted.length === 0) {
    return h("div", { class: "pane pending-pane" }, [
      h("p", { class: "empty-notice" }, ["nothing to study"]),
    ]);
  }
  return h("div", { class: "pane pending-pane" }, [
    h("h2", {}, ["To consult"]),
    h(
      "ul",
      { class: "pending-list" },
      vm.pending.map((step) =>
        h("li", { class: "pending-item", "data-id": step.id }, [
          h("span", {
            class: step.ready ? "dot dot-ready" : "dot dot-blocked",
          }),
          h(
            "a",
            { class: "title", href: "#" },
            [step.title],
            { click: () => handlers.onOpen(step.id) },
          ),
          h("span", { class: "time" }, [`${step.time} min`]),
          h(
            "button",
            { class: "more" },
            ["more"],
            { click: () => handlers.onMore(step.id) },
          ),
        ]),
      ),
    ),
  ]);
}

function renderConsultedPane(vm: SessionViewModel, handlers: ViewHandlers): VNode {
  return h("div", { class: "pane consulted-pane" }, [
    h("h2", {}, ["Consulted"]),
    h(
      "ul",
      { class: "consulted-list" },
      vm.consulted.map((item) =>
        h("li", { class: "consulted-item", "data-id": item.id }, [
          h(
            "a",
            { class: "title", href: "#" },
            [item.title],
            { click: () => handlers.onReopen(item.id) },
          ),
        ]),
      ),
    ),
  ]);
}

function renderRemainingTime(vm: SessionViewModel): VNode {
  const text =
    vm.remainingTime === null ? "no time limit" : `${vm.remainingTime} min left`;
  return h("div", { class: "remaining-time" }, [text]);
}

function renderCurrentPane(vm: SessionViewModel, handlers: ViewHandlers): VNode {
  if (!vm.current) {
    return h("div", { class: "pane current-pane" }, [
      h("p", { class: "placeholder" }, ["Select a resource to start."]),
    ]);
  }
  const current = vm.current;
  return h("div", { class: "pane current-pane" }, [
    h("h2", {}, [current.title]),
    h("iframe", { class: "resource-frame", src: current.uri }),
    h("a", { class: "open-tab", href: current.uri, target: "_blank" }, [
      "open in a new tab",
    ]),
    h(
      "button",
      { class: "close" },
      ["close (mark consulted)"],
      { click: () => handlers.onClose(current.id) },
    ),
  ]);
}

function renderExpansionPanel(vm: SessionViewModel, handlers: ViewHandlers): VNode | string {
  if (!vm.expansion) {
    return "";
  }
  if (vm.expansion.items.length === 0) {
    const text =
      vm.expansion.reason === "no_relations"
        ? "no related material"
        : "nothing more to suggest";
    return h("div", { class: "pane expansion-panel" }, [
      h("p", { class: "expansion-empty" }, [text]),
    ]);
  }
  return h("div", { class: "pane expansion-panel" }, [
    h("h2", {}, ["Related material"]),
    h(
      "ul",
      { class: "expansion-list" },
      vm.expansion.items.map((item) =>
        h("li", { class: "expansion-item", "data-id": item.id }, [
          h("span", { class: "title" }, [item.title]),
          h("span", { class: "time" }, [`${item.time} min`]),
          h(
            "button",
            { class: "adopt" },
            ["adopt"],
            { click: () => handlers.onAdopt(item.id) },
          ),
        ]),
      ),
    ),
  ]);
}

// -- tree queries (used by tests and by dom.ts) --------------------------------

export function findAll(node: VNode | string, predicate: (n: VNode) => boolean): VNode[] {
  if (typeof node === "string") return [];
  const here = predicate(node) ? [node] : [];
  return here.concat(node.children.flatMap((child) => findAll(child, predicate)));
}

export function findByClass(node: VNode, className: string): VNode[] {
  return findAll(node, (n) => (n.attrs.class ?? "").split(" ").includes(className));
}

export function textOf(node: VNode | string): string {
  if (typeof node === "string") return node;
  return node.children.map(textOf).join("");
}
