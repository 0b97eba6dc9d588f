/** Project/cover form: title, location, institution fields, authors, date. */
import { el, inputValue, labeledInput, showViolations } from "./forms.js";
import { UiProjectState } from "./state.js";
import type { Violation } from "./types.js";

export class ProjectForm {
  readonly root: HTMLElement;

  constructor(private state: UiProjectState,
              private onSaved?: (violations: Violation[]) => void) {
    const project = state.project;
    this.root = el("fieldset", "project-form");
    this.root.append(el("legend", "", "Datos del proyecto"));
    this.root.append(
      labeledInput("Título del proyecto", "title", project.title),
      labeledInput("Ubicación", "location", project.location),
      labeledInput("Universidad", "university", project.university),
      labeledInput("Facultad", "faculty", project.faculty),
      labeledInput("Carrera", "program", project.program),
      labeledInput("Asignatura", "course", project.course),
      labeledInput("Autores (separados por ;)", "authors", project.authors.join("; ")),
      labeledInput("Fecha", "date", project.date, "date"),
    );
    const save = el("button", "save-project", "Guardar proyecto");
    save.type = "button";
    save.addEventListener("click", () => void this.save());
    this.root.append(save);
    this.root.addEventListener("change", () => this.sync());
  }

  sync(): void {
    const project = this.state.project;
    project.title = inputValue(this.root, "title");
    project.location = inputValue(this.root, "location");
    project.university = inputValue(this.root, "university");
    project.faculty = inputValue(this.root, "faculty");
    project.program = inputValue(this.root, "program");
    project.course = inputValue(this.root, "course");
    project.authors = inputValue(this.root, "authors")
      .split(";").map((a) => a.trim()).filter((a) => a !== "");
    project.date = inputValue(this.root, "date");
  }

  async save(): Promise<void> {
    this.sync();
    // the server's violation list renders inline at the named fields
    const violations = await this.state.save();
    showViolations(this.root, violations);
    this.onSaved?.(violations);
  }
}
