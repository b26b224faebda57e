// The annotation panel's state machine, kept free of DOM access so it can be
// driven headlessly.  The server is the single source of truth: after every
// mutating action the display text and annotation count are re-fetched, never
// patched locally.
import { ApiError } from "./api.js";
function initialState() {
    return {
        project: null,
        providers: [],
        selectedProvider: null,
        language: "en",
        selectedMethod: null,
        selectedParameter: null,
        targetMode: "method",
        selectedKeyword: null,
        definitions: [],
        queried: false,
        displayText: "",
        error: null,
    };
}
export class AnnotationPanel {
    api;
    state = initialState();
    constructor(api) {
        this.api = api;
    }
    /** Fetch the provider list; selects the first provider and "en". */
    async init() {
        this.state.providers = await this.api.listDictionaries();
        this.state.selectedProvider = this.state.providers[0]?.id ?? null;
        this.state.language = "en";
    }
    /** Upload a source file; on success the parsed tree replaces the panel content. */
    async loadSource(filename, content) {
        this.state.error = null;
        try {
            const project = await this.api.createProject(filename, content);
            this.state.project = project;
            this.state.selectedMethod = project.model.methods[0]?.name ?? null;
            this.state.selectedParameter = null;
            this.state.targetMode = "method";
            this.state.selectedKeyword = null;
            this.state.definitions = [];
            this.state.queried = false;
            this.state.displayText = await this.api.getScriptDisplay(project.id);
        }
        catch (error) {
            this.state.error = describe(error);
        }
    }
    selectMethod(name) {
        this.state.selectedMethod = name;
        this.state.selectedParameter = null;
        this.state.targetMode = "method";
    }
    selectParameter(methodName, parameterName) {
        this.state.selectedMethod = methodName;
        this.state.selectedParameter = parameterName;
        this.state.targetMode = "parameter";
    }
    setTargetMode(mode) {
        this.state.targetMode = mode;
    }
    setProvider(providerId) {
        this.state.selectedProvider = providerId;
    }
    setLanguage(code) {
        this.state.language = code;
    }
    /** Languages the currently selected provider advertises. */
    providerLanguages() {
        const provider = this.state.providers.find((p) => p.id === this.state.selectedProvider);
        return provider ? provider.languages : [];
    }
    /** Keyword selection is case-insensitive against the parsed keyword list. */
    selectKeyword(term) {
        const keywords = this.state.project?.keywords ?? [];
        const canonical = keywords.find((k) => k.toLowerCase() === term.toLowerCase());
        if (canonical === undefined) {
            return false;
        }
        this.state.selectedKeyword = canonical;
        return true;
    }
    /** Query the selected keyword on the selected dictionary. */
    async queryKeyword() {
        const { selectedKeyword, selectedProvider, language } = this.state;
        if (!selectedKeyword || !selectedProvider) {
            this.state.error = "select a keyword and a dictionary first";
            return;
        }
        this.state.error = null;
        try {
            this.state.definitions = await this.api.lookup(selectedProvider, selectedKeyword, language);
            this.state.queried = true;
        }
        catch (error) {
            // provider or language trouble is retryable; keep prior definitions away
            this.state.definitions = [];
            this.state.queried = false;
            this.state.error = describe(error);
        }
    }
    /** True when the picked definition may be attached to the current target. */
    canAttach() {
        if (!this.state.project || !this.state.selectedMethod)
            return false;
        if (this.state.targetMode === "parameter" && !this.state.selectedParameter) {
            return false;
        }
        return true;
    }
    /** Attach the picked definition to the selected method or parameter, then
     *  re-fetch the authoritative display text. */
    async addDescription(definitionIndex) {
        const definition = this.state.definitions[definitionIndex];
        if (!definition) {
            this.state.error = "no definition picked";
            return false;
        }
        if (!this.canAttach()) {
            this.state.error =
                this.state.targetMode === "parameter"
                    ? "parameter mode needs a selected parameter"
                    : "load a file and select a method first";
            return false;
        }
        const project = this.state.project;
        this.state.error = null;
        try {
            await this.api.addAnnotation(project.id, {
                methodName: this.state.selectedMethod,
                parameterName: this.state.targetMode === "parameter" ? this.state.selectedParameter : null,
                term: definition.term,
                language: definition.language,
                source: definition.source,
                definition: definition.definition,
            });
            await this.refresh();
            return true;
        }
        catch (error) {
            this.state.error = describe(error);
            return false;
        }
    }
    /** Re-fetch project summary and display text from the server. */
    async refresh() {
        const project = this.state.project;
        if (!project)
            return;
        this.state.project = await this.api.getProject(project.id);
        this.state.displayText = await this.api.getScriptDisplay(project.id);
    }
    /** The saved artifact: the current script as XML text. */
    async saveScript() {
        const project = this.state.project;
        if (!project) {
            throw new Error("no project loaded");
        }
        return await this.api.getScriptXml(project.id);
    }
}
function describe(error) {
    if (error instanceof ApiError) {
        return `${error.status}: ${error.message}`;
    }
    return error instanceof Error ? error.message : String(error);
}
