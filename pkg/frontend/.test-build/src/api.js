export class ApiError extends Error {
    status;
    constructor(status, detail) {
        super(detail);
        this.status = status;
        this.name = "ApiError";
    }
}
async function throwFromResponse(response) {
    let detail = `${response.status} ${response.statusText}`;
    try {
        const body = await response.json();
        if (body && typeof body.detail === "string") {
            detail = body.detail;
        }
        else if (body && body.detail !== undefined) {
            detail = JSON.stringify(body.detail);
        }
    }
    catch {
        // non-JSON error body; keep the status line
    }
    throw new ApiError(response.status, detail);
}
/** Thin typed client over the annotation service's HTTP API. */
export class ApiClient {
    baseUrl;
    constructor(baseUrl = "") {
        this.baseUrl = baseUrl;
    }
    async getJson(path) {
        const response = await fetch(this.baseUrl + path);
        if (!response.ok)
            await throwFromResponse(response);
        return (await response.json());
    }
    async postJson(path, body) {
        const response = await fetch(this.baseUrl + path, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        });
        if (!response.ok)
            await throwFromResponse(response);
        return (await response.json());
    }
    createProject(filename, content) {
        return this.postJson("/projects", { filename, content });
    }
    getProject(projectId) {
        return this.getJson(`/projects/${encodeURIComponent(projectId)}`);
    }
    listDictionaries() {
        return this.getJson("/dictionaries");
    }
    lookup(providerId, term, language) {
        const query = new URLSearchParams({ term, language });
        return this.getJson(`/dictionaries/${encodeURIComponent(providerId)}/lookup?${query}`);
    }
    addAnnotation(projectId, body) {
        return this.postJson(`/projects/${encodeURIComponent(projectId)}/annotations`, body);
    }
    async getScriptXml(projectId) {
        const response = await fetch(`${this.baseUrl}/projects/${encodeURIComponent(projectId)}/script?format=xml`);
        if (!response.ok)
            await throwFromResponse(response);
        return await response.text();
    }
    async getScriptDisplay(projectId) {
        const response = await fetch(`${this.baseUrl}/projects/${encodeURIComponent(projectId)}/script?format=display`);
        if (!response.ok)
            await throwFromResponse(response);
        return await response.text();
    }
    match(body) {
        return this.postJson("/match", body);
    }
}
