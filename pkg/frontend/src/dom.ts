// Browser mounting for the plain node trees produced by view.ts. Naive
// full re-render: session state is tiny and changes only on user actions.

import type { VNode } from "./view.js";

function toElement(node: VNode | string): Node {
  if (typeof node === "string") {
    return document.createTextNode(node);
  }
  const el = document.createElement(node.tag);
  for (const [name, value] of Object.entries(node.attrs)) {
    el.setAttribute(name, value);
  }
  for (const [event, handler] of Object.entries(node.on)) {
    el.addEventListener(event, (domEvent) => {
      domEvent.preventDefault();
      handler();
    });
  }
  for (const child of node.children) {
    el.appendChild(toElement(child));
  }
  return el;
}

export function mount(root: HTMLElement, tree: VNode): void {
  root.replaceChildren(toElement(tree));
}
