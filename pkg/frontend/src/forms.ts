/** Small DOM helpers shared by the form components. */
import type { Violation } from "./types.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className = "", text = ""): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text) {
    node.textContent = text;
  }
  return node;
}

export function labeledInput(labelText: string, name: string,
                             value = "", type = "text"): HTMLLabelElement {
  const label = el("label", "field");
  const span = el("span", "field-label", labelText);
  const input = el("input");
  input.type = type;
  input.name = name;
  input.value = value;
  label.append(span, input);
  return label;
}

export function labeledSelect(labelText: string, name: string,
                              options: [string, string][]): HTMLLabelElement {
  const label = el("label", "field");
  const span = el("span", "field-label", labelText);
  const select = el("select");
  select.name = name;
  for (const [value, text] of options) {
    const option = el("option", "", text);
    option.value = value;
    select.append(option);
  }
  label.append(span, select);
  return label;
}

export function inputValue(root: ParentNode, name: string): string {
  const node = root.querySelector<HTMLInputElement | HTMLSelectElement>(
    `[name="${name}"]`);
  return node ? node.value : "";
}

export function numberValue(root: ParentNode, name: string): number {
  const raw = inputValue(root, name);
  return raw === "" ? 0 : Number(raw);
}

/** Render server violations inline next to the fields they name. */
export function showViolations(root: ParentNode, violations: Violation[]): void {
  root.querySelectorAll(".violation").forEach((node) => node.remove());
  for (const violation of violations) {
    const marker = el("div", "violation", violation.message);
    marker.dataset.path = violation.path;
    const leaf = violation.path.split(".").pop() ?? violation.path;
    const field = root.querySelector(`[name="${leaf}"]`);
    if (field && field.parentElement) {
      field.parentElement.append(marker);
    } else {
      (root as unknown as HTMLElement).append?.(marker);
    }
  }
}
