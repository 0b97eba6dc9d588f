/** One sampling-point block: rock characteristics, joint-set table, Schmidt
 * readings, two image slots with "generate description" actions, and the
 * editable generated paragraphs.
 */
import { ApiClient } from "./api.js";
import { el, inputValue, labeledInput, labeledSelect, numberValue, showViolations } from "./forms.js";
import { RmrForm } from "./rmrForm.js";
import { BarChartView, StereonetView } from "./stereonet.js";
import { UiProjectState } from "./state.js";
import type { ImageRole, JointSet, Outcrop, SchmidtResult } from "./types.js";

const SECTION_FOR_ROLE: Record<ImageRole, string> = {
  outcrop: "outcrop_description",
  hand_sample: "hand_sample_description",
};

export class OutcropBlock {
  readonly root: HTMLElement;
  readonly stereonet: StereonetView;
  readonly bars: BarChartView;
  readonly rmrForm: RmrForm;
  private jointRows: HTMLElement;
  private editors = new Map<string, HTMLTextAreaElement>();
  lastSchmidt: SchmidtResult | null = null;

  constructor(private api: ApiClient, private state: UiProjectState,
              readonly outcrop: Outcrop) {
    this.root = el("section", "outcrop-block");
    this.root.dataset.outcropId = String(outcrop.id);
    this.root.append(el("h2", "", `Afloramiento ${outcrop.id}`));

    // -- location + rock characteristics ------------------------------------
    const rockForm = el("fieldset", "rock-form");
    rockForm.append(el("legend", "", "Características de la roca"));
    rockForm.append(
      labeledInput("X", "coord_x", String(outcrop.coordinates[0]), "number"),
      labeledInput("Y", "coord_y", String(outcrop.coordinates[1]), "number"),
      labeledInput("Z", "coord_z", String(outcrop.coordinates[2]), "number"),
      labeledInput("Sistema de referencia", "crs", outcrop.crs),
      labeledSelect("Tipo de roca", "rock_type", [
        ["igneous", "Ígnea"], ["sedimentary", "Sedimentaria"],
        ["metamorphic", "Metamórfica"],
      ]),
      labeledInput("Nombre de la roca", "rock_name", outcrop.rock.rock_name),
      labeledInput("Matriz", "matrix", outcrop.rock.matrix),
      labeledInput("Textura", "texture", outcrop.rock.texture),
      labeledInput("Mineralogía", "mineralogy", outcrop.rock.mineralogy),
      labeledInput("Tamaño de grano", "grain_size", outcrop.rock.grain_size),
      labeledInput("Color predominante", "color", outcrop.rock.color),
      labeledInput("Geología", "geology", outcrop.rock.geology),
      labeledInput("Estructuras principales", "main_structures", outcrop.rock.main_structures),
      labeledInput("Calidad del macizo", "mass_quality", outcrop.rock.mass_quality),
      labeledInput("Descripción de juntas", "joint_description", outcrop.rock.joint_description),
    );
    const typeSelect = rockForm.querySelector<HTMLSelectElement>('[name="rock_type"]');
    if (typeSelect) {
      typeSelect.value = outcrop.rock.rock_type;
    }
    rockForm.addEventListener("change", () => this.syncRockForm());
    this.root.append(rockForm);

    // -- joint sets + stereonet + bars --------------------------------------
    const structural = el("fieldset", "structural");
    structural.append(el("legend", "", "Apartado estructural"));
    this.jointRows = el("div", "joint-rows");
    for (const js of outcrop.joint_sets) {
      this.jointRows.append(this.jointRow(js));
    }
    const addJoint = el("button", "add-joint", "Añadir familia");
    addJoint.type = "button";
    addJoint.addEventListener("click", () => {
      this.jointRows.append(this.jointRow({ set_label: `J${this.jointRows.children.length + 1}`,
                                            dip_direction: 0, dip: 0, count: 1 }));
    });
    const plotButton = el("button", "plot-stereonet", "Proyectar estereograma");
    plotButton.type = "button";
    plotButton.addEventListener("click", () => void this.plotStereonet());

    const stereoCanvas = el("canvas", "stereonet-canvas");
    stereoCanvas.width = 260;
    stereoCanvas.height = 260;
    const barCanvas = el("canvas", "bars-canvas");
    barCanvas.width = 260;
    barCanvas.height = 140;
    this.stereonet = new StereonetView(stereoCanvas);
    this.bars = new BarChartView(barCanvas);
    structural.append(this.jointRows, addJoint, plotButton, stereoCanvas, barCanvas);
    this.root.append(structural);

    // -- Schmidt hammer -------------------------------------------------------
    const schmidt = el("fieldset", "schmidt");
    schmidt.append(el("legend", "", "Esclerómetro"));
    schmidt.append(
      labeledInput("Método", "schmidt_method", outcrop.schmidt?.method ?? ""),
      labeledInput("Lecturas HR (separadas por coma)", "schmidt_readings",
                   (outcrop.schmidt?.readings ?? []).join(", ")),
      labeledInput("Peso específico (kN/m³)", "unit_weight",
                   String(outcrop.schmidt?.unit_weight_kn_m3 ?? 26), "number"),
    );
    const schmidtButton = el("button", "run-schmidt", "Calcular correlaciones");
    schmidtButton.type = "button";
    schmidtButton.addEventListener("click", () => void this.runSchmidt());
    const schmidtOut = el("output", "schmidt-results", "");
    schmidt.append(schmidtButton, schmidtOut);
    this.root.append(schmidt);

    // -- RMR annex form --------------------------------------------------------
    this.rmrForm = new RmrForm(api, (result) => {
      this.outcrop.rmr_input = this.rmrForm.readInput();
      void result;
    });
    this.root.append(this.rmrForm.root);

    // -- image slots + generated descriptions -----------------------------------
    for (const role of ["outcrop", "hand_sample"] as ImageRole[]) {
      this.root.append(this.imageSlot(role));
    }
  }

  private jointRow(js: JointSet): HTMLElement {
    const row = el("div", "joint-row");
    row.append(
      labeledInput("Familia", "set_label", js.set_label),
      labeledInput("Dirección de buzamiento", "dip_direction",
                   String(js.dip_direction), "number"),
      labeledInput("Buzamiento", "dip", String(js.dip), "number"),
      labeledInput("Medidas", "count", String(js.count), "number"),
    );
    return row;
  }

  readJointSets(): JointSet[] {
    return Array.from(this.jointRows.children).map((row) => ({
      set_label: inputValue(row, "set_label"),
      dip_direction: numberValue(row, "dip_direction"),
      dip: numberValue(row, "dip"),
      count: numberValue(row, "count"),
    }));
  }

  private syncRockForm(): void {
    const oc = this.outcrop;
    oc.coordinates = [numberValue(this.root, "coord_x"),
                      numberValue(this.root, "coord_y"),
                      numberValue(this.root, "coord_z")];
    oc.crs = inputValue(this.root, "crs");
    oc.rock.rock_type = inputValue(this.root, "rock_type") as Outcrop["rock"]["rock_type"];
    oc.rock.rock_name = inputValue(this.root, "rock_name");
    oc.rock.matrix = inputValue(this.root, "matrix");
    oc.rock.texture = inputValue(this.root, "texture");
    oc.rock.mineralogy = inputValue(this.root, "mineralogy");
    oc.rock.grain_size = inputValue(this.root, "grain_size");
    oc.rock.color = inputValue(this.root, "color");
    oc.rock.geology = inputValue(this.root, "geology");
    oc.rock.main_structures = inputValue(this.root, "main_structures");
    oc.rock.mass_quality = inputValue(this.root, "mass_quality");
    oc.rock.joint_description = inputValue(this.root, "joint_description");
  }

  /** Joint sets -> server projection -> canvas; the canvas shows exactly the
   * points the API returned. */
  async plotStereonet(): Promise<void> {
    this.outcrop.joint_sets = this.readJointSets();
    const response = await this.api.projectStereonet(this.outcrop.joint_sets);
    this.stereonet.plot(response.points);
    this.bars.draw(this.outcrop.joint_sets.map((js) => ({
      label: js.set_label, count: js.count,
    })));
  }

  async runSchmidt(): Promise<void> {
    const readings = inputValue(this.root, "schmidt_readings")
      .split(",").map((s) => s.trim()).filter((s) => s !== "").map(Number);
    const payload = {
      method: inputValue(this.root, "schmidt_method"),
      readings,
      unit_weight_kn_m3: numberValue(this.root, "unit_weight"),
    };
    const out = this.root.querySelector<HTMLElement>(".schmidt-results");
    try {
      const result = await this.api.computeSchmidt(payload);
      this.lastSchmidt = result;
      this.outcrop.schmidt = { ...payload, modulus_ratio: 300 };
      if (out) {
        // all figures come straight from the response
        out.textContent =
          `HR prom: ${result.hr_mean_top10} · HR med: ${result.hr_median_top10} · ` +
          `UCS media: ${result.ucs_mean_mpa} MPa · UCS mediana: ${result.ucs_median_mpa} MPa · ` +
          `E: ${result.young_modulus_mpa} MPa`;
      }
    } catch (err) {
      if (out) {
        out.textContent = `error: ${(err as Error).message}`;
      }
      showViolations(this.root, (err as { violations?: [] }).violations ?? []);
    }
  }

  private imageSlot(role: ImageRole): HTMLElement {
    const section = SECTION_FOR_ROLE[role];
    const slot = el("div", `image-slot image-slot-${role}`);
    slot.append(el("h3", "", role === "outcrop" ? "Imagen del afloramiento"
                                                : "Imagen de la muestra de mano"));
    const file = el("input");
    file.type = "file";
    file.accept = "image/*";
    file.name = `file_${role}`;
    const upload = el("button", "upload-image", "Subir imagen");
    upload.type = "button";
    upload.addEventListener("click", () => void this.uploadImage(role, file));

    const generate = el("button", `generate-${role}`, "Generar descripción");
    generate.type = "button";
    generate.addEventListener("click", () => void this.generateDescription(role));

    const editor = el("textarea", "section-editor");
    editor.name = `editor_${section}`;
    editor.value = this.state.editBuffer(section, this.outcrop.id);
    editor.addEventListener("input", () => {
      this.state.edit(section, this.outcrop.id, editor.value);
      slot.classList.toggle("dirty", this.state.isDirty(section, this.outcrop.id));
    });
    this.editors.set(section, editor);

    slot.append(file, upload, generate, editor);
    return slot;
  }

  private async uploadImage(role: ImageRole, input: HTMLInputElement): Promise<void> {
    const file = input.files?.[0];
    if (!file || this.state.projectId === null) {
      return;
    }
    const ref = await this.api.uploadImage(this.state.projectId, this.outcrop.id,
                                           role, file);
    this.outcrop.images.push({
      id: ref.id, role, media_type: file.type || "image/jpeg",
      byte_length: file.size, storage_key: ref.storage_key,
    });
  }

  async generateDescription(role: ImageRole): Promise<void> {
    if (this.state.projectId === null) {
      await this.state.save();
    }
    const section = SECTION_FOR_ROLE[role];
    const generated = await this.api.generateSection(this.state.projectId!,
                                                     section, this.outcrop.id);
    const text = generated.blocks
      .filter((b) => b.kind === "paragraph")
      .map((b) => b.text)
      .join("\n\n");
    this.state.acceptGenerated(section, this.outcrop.id, text);
    const editor = this.editors.get(section);
    if (editor) {
      editor.value = text;
    }
  }

  editorFor(section: string): HTMLTextAreaElement | undefined {
    return this.editors.get(section);
  }
}
