import type {
  AnnotationBody,
  DefinitionRecord,
  MatchReportInfo,
  ProjectSummary,
  ProviderInfo,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function throwFromResponse(response: Response): Promise<never> {
  let detail = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") {
      detail = body.detail;
    } else if (body && body.detail !== undefined) {
      detail = JSON.stringify(body.detail);
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, detail);
}

/** Thin typed client over the annotation service's HTTP API. */
export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) await throwFromResponse(response);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await throwFromResponse(response);
    return (await response.json()) as T;
  }

  createProject(filename: string, content: string): Promise<ProjectSummary> {
    return this.postJson("/projects", { filename, content });
  }

  getProject(projectId: string): Promise<ProjectSummary> {
    return this.getJson(`/projects/${encodeURIComponent(projectId)}`);
  }

  listDictionaries(): Promise<ProviderInfo[]> {
    return this.getJson("/dictionaries");
  }

  lookup(providerId: string, term: string, language: string): Promise<DefinitionRecord[]> {
    const query = new URLSearchParams({ term, language });
    return this.getJson(`/dictionaries/${encodeURIComponent(providerId)}/lookup?${query}`);
  }

  addAnnotation(projectId: string, body: AnnotationBody): Promise<{ annotationCount: number }> {
    return this.postJson(`/projects/${encodeURIComponent(projectId)}/annotations`, body);
  }

  async getScriptXml(projectId: string): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/projects/${encodeURIComponent(projectId)}/script?format=xml`,
    );
    if (!response.ok) await throwFromResponse(response);
    return await response.text();
  }

  async getScriptDisplay(projectId: string): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/projects/${encodeURIComponent(projectId)}/script?format=display`,
    );
    if (!response.ok) await throwFromResponse(response);
    return await response.text();
  }

  match(body: {
    concepts: { concept: string; desiredDefinition?: string }[];
    scripts?: string[];
    projectIds?: string[];
  }): Promise<MatchReportInfo[]> {
    return this.postJson("/match", body);
  }
}
