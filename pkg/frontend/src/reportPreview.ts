/** Report preview: fetches the print-styled HTML export into an iframe.
 * "Descargar PDF" triggers the browser's print dialog on that iframe, so
 * the PDF is exactly the export the server produced.
 */
import { ApiClient } from "./api.js";
import { el } from "./forms.js";

export class ReportPreview {
  readonly root: HTMLElement;
  readonly frame: HTMLIFrameElement;
  private status: HTMLElement;

  constructor(private api: ApiClient) {
    this.root = el("section", "report-preview");
    this.root.append(el("h2", "", "Vista previa del informe"));
    const refresh = el("button", "refresh-preview", "Actualizar vista previa");
    refresh.type = "button";
    refresh.addEventListener("click", () => void this.refresh());
    const download = el("button", "download-pdf", "Descargar PDF");
    download.type = "button";
    download.addEventListener("click", () => this.print());
    this.status = el("output", "preview-status", "");
    this.frame = el("iframe", "preview-frame") as HTMLIFrameElement;
    this.frame.setAttribute("title", "informe");
    this.root.append(refresh, download, this.status, this.frame);
  }

  projectId: string | null = null;

  async refresh(): Promise<void> {
    if (this.projectId === null) {
      this.status.textContent = "Guarde el proyecto antes de previsualizar.";
      return;
    }
    try {
      const html = await this.api.reportHtml(this.projectId);
      this.frame.srcdoc = html;
      this.status.textContent = "";
    } catch (err) {
      this.status.textContent = `error: ${(err as Error).message}`;
    }
  }

  print(): void {
    this.frame.contentWindow?.print();
  }
}
