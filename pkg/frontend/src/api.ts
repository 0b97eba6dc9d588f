/** Thin typed client over the report service REST API.
 *
 * Every number the UI displays comes back from these calls; the client is
 * the only place the frontend talks to the outside world, which keeps it
 * easy to stub in tests.
 */
import type {
  GeneratedSection,
  ImageRole,
  Outcrop,
  Project,
  RmrInput,
  RmrResult,
  SchmidtResult,
  StereoPoint,
  Violation,
} from "./types.js";

export type FetchFn = typeof fetch;

export class ApiError extends Error {
  code: string;
  violations: Violation[];
  status: number;

  constructor(status: number, code: string, message: string, violations: Violation[] = []) {
    super(message);
    this.status = status;
    this.code = code;
    this.violations = violations;
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "error";
  let message = `HTTP ${response.status}`;
  let violations: Violation[] = [];
  try {
    const body = await response.json();
    if (body && body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      violations = body.error.violations ?? [];
    }
  } catch {
    // non-JSON error body; keep the defaults
  }
  return new ApiError(response.status, code, message, violations);
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchFn = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private json(body: unknown, method = "POST"): RequestInit {
    return {
      method,
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  createProject(project: Project): Promise<{ id: string; violations: Violation[] }> {
    return this.request("/projects", this.json(project));
  }

  getProject(id: string): Promise<Project> {
    return this.request(`/projects/${id}`);
  }

  updateProject(id: string, project: Project): Promise<{ id: string; violations: Violation[] }> {
    return this.request(`/projects/${id}`, this.json(project, "PUT"));
  }

  addOutcrop(projectId: string, outcrop: Outcrop): Promise<{ id: number; violations: Violation[] }> {
    return this.request(`/projects/${projectId}/outcrops`, this.json(outcrop));
  }

  async uploadImage(projectId: string, outcropId: number, role: ImageRole,
                    file: File): Promise<{ id: string; storage_key: string }> {
    const form = new FormData();
    form.append("file", file);
    const response = await this.fetchFn(
      `${this.baseUrl}/outcrops/${outcropId}/images?project=${projectId}&role=${role}`,
      { method: "POST", body: form },
    );
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as { id: string; storage_key: string };
  }

  generateSection(projectId: string, section: string,
                  outcropId?: number): Promise<GeneratedSection> {
    const outcrop = outcropId === undefined ? "" : `&outcrop=${outcropId}`;
    return this.request(`/generate/${section}?project=${projectId}${outcrop}`,
                        { method: "POST" });
  }

  computeRmr(input: RmrInput): Promise<RmrResult> {
    return this.request("/geomech/rmr", this.json(input));
  }

  computeSchmidt(payload: { method: string; readings: number[]; unit_weight_kn_m3: number;
                            modulus_ratio?: number }): Promise<SchmidtResult> {
    return this.request("/geomech/schmidt", this.json(payload));
  }

  projectStereonet(jointSets: { set_label: string; dip_direction: number; dip: number;
                                count: number }[]): Promise<{ points: StereoPoint[] }> {
    return this.request("/geomech/stereonet", this.json({ joint_sets: jointSets }));
  }

  async reportHtml(projectId: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/projects/${projectId}/report?format=html`);
    if (!response.ok) {
      throw await parseError(response);
    }
    return await response.text();
  }
}
