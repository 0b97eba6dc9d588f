/** RMR annex form with a live total/class badge.
 *
 * The badge always shows the exact numbers the server returned; there is no
 * client-side scoring.
 */
import { ApiClient } from "./api.js";
import { el, inputValue, labeledInput, labeledSelect, numberValue } from "./forms.js";
import type { RmrInput, RmrResult } from "./types.js";

const ROUGHNESS: [string, string][] = [
  ["very_rough", "Muy rugosa"], ["rough", "Rugosa"],
  ["slightly_rough", "Ligeramente rugosa"], ["smooth", "Lisa"],
  ["slickensided", "Espejo de falla"],
];
const INFILLING: [string, string][] = [
  ["none", "Sin relleno"], ["hard_lt5mm", "Duro < 5 mm"], ["hard_gt5mm", "Duro > 5 mm"],
  ["soft_lt5mm", "Blando < 5 mm"], ["soft_gt5mm", "Blando > 5 mm"],
];
const WEATHERING: [string, string][] = [
  ["unweathered", "Inalterada"], ["slightly", "Ligeramente alterada"],
  ["moderately", "Moderadamente alterada"], ["highly", "Muy alterada"],
  ["decomposed", "Descompuesta"],
];
const GROUNDWATER: [string, string][] = [
  ["dry", "Seco"], ["damp", "Ligeramente húmedo"], ["wet", "Húmedo"],
  ["dripping", "Goteo"], ["flowing", "Flujo de agua"],
];

export class RmrForm {
  readonly root: HTMLElement;
  private badge: HTMLElement;
  lastResult: RmrResult | null = null;

  constructor(private api: ApiClient,
              private onResult?: (result: RmrResult) => void) {
    this.root = el("fieldset", "rmr-form");
    this.root.append(el("legend", "", "Clasificación RMR (Anexo A)"));
    this.root.append(
      labeledInput("Número de familias de juntas", "n_joint_families", "1", "number"),
      labeledInput("UCS (MPa)", "ucs_mpa", "50", "number"),
      labeledInput("RQD (%)", "rqd_pct", "75", "number"),
      labeledInput("Espaciamiento (m)", "spacing_m", "0.5", "number"),
      labeledInput("Continuidad (m)", "persistence_m", "1", "number"),
      labeledInput("Apertura (mm)", "aperture_mm", "0.1", "number"),
      labeledSelect("Rugosidad", "roughness", ROUGHNESS),
      labeledSelect("Relleno", "infilling", INFILLING),
      labeledSelect("Alteración", "weathering", WEATHERING),
      labeledSelect("Agua freática", "groundwater", GROUNDWATER),
      labeledInput("Ajuste por orientación", "orientation_adjustment", "0", "number"),
    );
    this.badge = el("output", "rmr-badge", "—");
    const refresh = el("button", "refresh-rmr", "Calcular");
    refresh.type = "button";
    refresh.addEventListener("click", () => void this.refresh());
    this.root.append(refresh, this.badge);
    this.root.addEventListener("change", () => void this.refresh());
  }

  readInput(): RmrInput {
    return {
      n_joint_families: numberValue(this.root, "n_joint_families"),
      ucs_mpa: numberValue(this.root, "ucs_mpa"),
      rqd_pct: numberValue(this.root, "rqd_pct"),
      spacing_m: numberValue(this.root, "spacing_m"),
      persistence_m: numberValue(this.root, "persistence_m"),
      aperture_mm: numberValue(this.root, "aperture_mm"),
      roughness: inputValue(this.root, "roughness"),
      infilling: inputValue(this.root, "infilling"),
      weathering: inputValue(this.root, "weathering"),
      groundwater: inputValue(this.root, "groundwater"),
      orientation_adjustment: numberValue(this.root, "orientation_adjustment"),
    };
  }

  async refresh(): Promise<void> {
    try {
      const result = await this.api.computeRmr(this.readInput());
      this.lastResult = result;
      // displayed verbatim from the response; never computed here
      this.badge.textContent = `${result.adjusted_total} / Clase ${result.rmr_class}`;
      this.badge.dataset.basicTotal = String(result.basic_total);
      this.onResult?.(result);
    } catch (err) {
      this.badge.textContent = `error: ${(err as Error).message}`;
    }
  }
}
