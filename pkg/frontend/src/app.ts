/** Page bootstrap: project form, one block per outcrop, report preview. */
import { ApiClient } from "./api.js";
import { el } from "./forms.js";
import { OutcropBlock } from "./outcropBlock.js";
import { ProjectForm } from "./projectForm.js";
import { ReportPreview } from "./reportPreview.js";
import { UiProjectState } from "./state.js";
import { emptyOutcrop, emptyProject } from "./types.js";

export function mountApp(root: HTMLElement, api = new ApiClient()): {
  state: UiProjectState;
  blocks: OutcropBlock[];
  preview: ReportPreview;
} {
  const state = new UiProjectState(api, emptyProject());
  const preview = new ReportPreview(api);
  const blocks: OutcropBlock[] = [];

  const form = new ProjectForm(state, () => {
    preview.projectId = state.projectId;
  });

  const blocksHost = el("div", "outcrop-blocks");
  const addBlock = el("button", "add-outcrop", "Añadir afloramiento");
  addBlock.type = "button";
  addBlock.addEventListener("click", () => {
    const nextId = state.project.outcrops.length + 1;
    const outcrop = emptyOutcrop(nextId);
    state.project.outcrops.push(outcrop);
    const block = new OutcropBlock(api, state, outcrop);
    blocks.push(block);
    blocksHost.append(block.root);
  });

  root.append(el("h1", "", "Informes geotécnicos de macizos rocosos"),
              form.root, addBlock, blocksHost, preview.root);
  return { state, blocks, preview };
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!);
}
