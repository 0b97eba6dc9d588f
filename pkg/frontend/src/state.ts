/** Client-side project state with per-section edit buffers.
 *
 * The server copy is the source of truth. Generated paragraphs open in edit
 * buffers; a buffer may diverge from the server state only while its dirty
 * flag is set, and saving (or reloading) reconciles it.
 */
import type { Project, Violation } from "./types.js";
import { ApiClient } from "./api.js";

/** Key for a section buffer: project-level sections use outcropId = null. */
export function bufferKey(section: string, outcropId: number | null): string {
  return outcropId === null ? section : `${section}@${outcropId}`;
}

export class UiProjectState {
  projectId: string | null = null;
  project: Project;
  private buffers = new Map<string, string>();
  private dirty = new Set<string>();

  constructor(private api: ApiClient, project: Project) {
    this.project = project;
  }

  /** Server-side text for a section (empty string when not generated yet). */
  serverText(section: string, outcropId: number | null): string {
    if (outcropId === null) {
      return this.project.generated[section] ?? "";
    }
    const outcrop = this.project.outcrops.find((oc) => oc.id === outcropId);
    return outcrop?.generated[section] ?? "";
  }

  editBuffer(section: string, outcropId: number | null): string {
    const key = bufferKey(section, outcropId);
    if (!this.buffers.has(key)) {
      this.buffers.set(key, this.serverText(section, outcropId));
    }
    return this.buffers.get(key)!;
  }

  isDirty(section: string, outcropId: number | null): boolean {
    return this.dirty.has(bufferKey(section, outcropId));
  }

  /** User edited the buffer; it may now diverge from the server copy. */
  edit(section: string, outcropId: number | null, text: string): void {
    const key = bufferKey(section, outcropId);
    this.buffers.set(key, text);
    if (text === this.serverText(section, outcropId)) {
      this.dirty.delete(key);
    } else {
      this.dirty.add(key);
    }
  }

  /** Fresh generated text arrived from the server; buffer follows it. */
  acceptGenerated(section: string, outcropId: number | null, text: string): void {
    if (outcropId === null) {
      this.project.generated[section] = text;
    } else {
      const outcrop = this.project.outcrops.find((oc) => oc.id === outcropId);
      if (outcrop) {
        outcrop.generated[section] = text;
      }
    }
    const key = bufferKey(section, outcropId);
    this.buffers.set(key, text);
    this.dirty.delete(key);
  }

  /** Push every dirty buffer into the project and PUT it to the server.
   * Returns the server's violation list for inline display. */
  async save(): Promise<Violation[]> {
    for (const key of this.dirty) {
      const [section, outcropPart] = key.split("@");
      const text = this.buffers.get(key) ?? "";
      if (outcropPart === undefined) {
        this.project.generated[section] = text;
      } else {
        const outcrop = this.project.outcrops.find((oc) => oc.id === Number(outcropPart));
        if (outcrop) {
          outcrop.generated[section] = text;
        }
      }
    }
    let violations: Violation[];
    if (this.projectId === null) {
      const created = await this.api.createProject(this.project);
      this.projectId = created.id;
      violations = created.violations;
    } else {
      const updated = await this.api.updateProject(this.projectId, this.project);
      violations = updated.violations;
    }
    this.dirty.clear();
    return violations;
  }

  /** Invariant check: buffers may diverge from server text only while dirty. */
  buffersConsistent(): boolean {
    for (const [key, text] of this.buffers) {
      const [section, outcropPart] = key.split("@");
      const outcropId = outcropPart === undefined ? null : Number(outcropPart);
      if (!this.dirty.has(key) && text !== this.serverText(section, outcropId)) {
        return false;
      }
    }
    return true;
  }
}
