// DOM wiring for the annotation panel: a keyword tree up top, dictionary
// controls on the left, the definition pick list in the middle, and the
// accumulated metadata description bottom right.

import { ApiClient } from "./api.js";
import { AnnotationPanel } from "./panel.js";
import type { MethodInfo } from "./types.js";

const api = new ApiClient("");
const panel = new AnnotationPanel(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const fileInput = el<HTMLInputElement>("file-input");
const tree = el<HTMLUListElement>("keyword-tree");
const providerSelect = el<HTMLSelectElement>("provider-select");
const languageSelect = el<HTMLSelectElement>("language-select");
const keywordSelect = el<HTMLSelectElement>("keyword-select");
const queryButton = el<HTMLButtonElement>("query-button");
const modeMethod = el<HTMLInputElement>("mode-method");
const modeParameter = el<HTMLInputElement>("mode-parameter");
const definitionList = el<HTMLUListElement>("definition-list");
const display = el<HTMLTextAreaElement>("metadata-display");
const saveButton = el<HTMLButtonElement>("save-button");
const statusBar = el<HTMLDivElement>("status-bar");
const targetLabel = el<HTMLSpanElement>("target-label");

function setStatus(message: string, isError = false): void {
  statusBar.textContent = message;
  statusBar.className = isError ? "status error" : "status";
}

function renderProviders(): void {
  providerSelect.innerHTML = "";
  for (const provider of panel.state.providers) {
    const option = document.createElement("option");
    option.value = provider.id;
    option.textContent = provider.displayName;
    providerSelect.appendChild(option);
  }
  if (panel.state.selectedProvider) {
    providerSelect.value = panel.state.selectedProvider;
  }
  renderLanguages();
}

function renderLanguages(): void {
  const languages = panel.providerLanguages();
  languageSelect.innerHTML = "";
  for (const code of languages.length ? languages : ["en"]) {
    const option = document.createElement("option");
    option.value = code;
    option.textContent = code;
    languageSelect.appendChild(option);
  }
  languageSelect.value = languages.includes(panel.state.language)
    ? panel.state.language
    : (languages[0] ?? "en");
  panel.setLanguage(languageSelect.value);
}

function methodLabel(method: MethodInfo): string {
  const params = method.parameters.map((p) => p.name).join(", ");
  return `${method.name}(${params})`;
}

function renderTree(): void {
  tree.innerHTML = "";
  const model = panel.state.project?.model;
  if (!model) return;
  for (const method of model.methods) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.type = "button";
    button.className =
      panel.state.selectedMethod === method.name && panel.state.targetMode === "method"
        ? "tree-node selected"
        : "tree-node";
    button.textContent = `${methodLabel(method)}  [${method.tokens.join(" ")}]`;
    button.addEventListener("click", () => {
      panel.selectMethod(method.name);
      syncSelection();
    });
    item.appendChild(button);

    if (method.parameters.length) {
      const childList = document.createElement("ul");
      for (const parameter of method.parameters) {
        const childItem = document.createElement("li");
        const childButton = document.createElement("button");
        childButton.type = "button";
        childButton.className =
          panel.state.selectedMethod === method.name &&
          panel.state.selectedParameter === parameter.name
            ? "tree-node selected"
            : "tree-node";
        childButton.textContent = `${parameter.name}  [${parameter.tokens.join(" ")}]`;
        childButton.addEventListener("click", () => {
          panel.selectParameter(method.name, parameter.name);
          syncSelection();
        });
        childItem.appendChild(childButton);
        childList.appendChild(childItem);
      }
      item.appendChild(childList);
    }
    tree.appendChild(item);
  }
}

function renderKeywords(): void {
  keywordSelect.innerHTML = "";
  const keywords = panel.state.project?.keywords ?? [];
  for (const keyword of keywords) {
    const option = document.createElement("option");
    option.value = keyword;
    option.textContent = keyword;
    keywordSelect.appendChild(option);
  }
  if (keywords.length) {
    panel.selectKeyword(keywordSelect.value);
  }
}

function renderDefinitions(): void {
  definitionList.innerHTML = "";
  if (panel.state.queried && panel.state.definitions.length === 0) {
    const item = document.createElement("li");
    item.className = "empty";
    item.textContent = "no definitions";
    definitionList.appendChild(item);
    return;
  }
  panel.state.definitions.forEach((record, index) => {
    const item = document.createElement("li");
    const text = document.createElement("div");
    text.className = "definition-text";
    text.textContent = record.definition;
    const source = document.createElement("div");
    source.className = "definition-source";
    source.textContent = `${record.term} (${record.language}) - ${record.source}`;
    const attach = document.createElement("button");
    attach.type = "button";
    attach.textContent = "Attach to target";
    attach.addEventListener("click", async () => {
      const ok = await panel.addDescription(index);
      syncAll();
      setStatus(
        ok ? "definition attached" : panel.state.error ?? "could not attach",
        !ok,
      );
    });
    item.append(text, source, attach);
    definitionList.appendChild(item);
  });
}

function syncSelection(): void {
  renderTree();
  modeMethod.checked = panel.state.targetMode === "method";
  modeParameter.checked = panel.state.targetMode === "parameter";
  const method = panel.state.selectedMethod ?? "(none)";
  targetLabel.textContent =
    panel.state.targetMode === "parameter" && panel.state.selectedParameter
      ? `${method}.${panel.state.selectedParameter}`
      : method;
}

function syncAll(): void {
  renderProviders();
  renderTree();
  renderKeywords();
  renderDefinitions();
  display.value = panel.state.displayText;
  syncSelection();
  if (panel.state.error) {
    setStatus(panel.state.error, true);
  }
}

fileInput.addEventListener("change", async () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  const content = await file.text();
  await panel.loadSource(file.name, content);
  syncAll();
  if (!panel.state.error) {
    setStatus(`loaded ${file.name}`);
  }
});

providerSelect.addEventListener("change", () => {
  panel.setProvider(providerSelect.value);
  renderLanguages();
});

languageSelect.addEventListener("change", () => {
  panel.setLanguage(languageSelect.value);
});

keywordSelect.addEventListener("change", () => {
  panel.selectKeyword(keywordSelect.value);
});

queryButton.addEventListener("click", async () => {
  panel.selectKeyword(keywordSelect.value);
  await panel.queryKeyword();
  renderDefinitions();
  setStatus(
    panel.state.error ??
      `${panel.state.definitions.length} definition(s) for "${panel.state.selectedKeyword}"`,
    panel.state.error !== null,
  );
});

modeMethod.addEventListener("change", () => {
  if (modeMethod.checked) panel.setTargetMode("method");
  syncSelection();
});

modeParameter.addEventListener("change", () => {
  if (modeParameter.checked) panel.setTargetMode("parameter");
  syncSelection();
});

saveButton.addEventListener("click", async () => {
  try {
    const xml = await panel.saveScript();
    const name = panel.state.project?.model.interfaceName ?? "script";
    const blob = new Blob([xml], { type: "application/xml" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${name}.metadata.xml`;
    link.click();
    URL.revokeObjectURL(link.href);
    setStatus("script saved");
  } catch (error) {
    setStatus(error instanceof Error ? error.message : String(error), true);
  }
});

panel
  .init()
  .then(() => {
    syncAll();
    setStatus("load a .java, .wsdl, or .xml file to begin");
  })
  .catch((error) => setStatus(String(error), true));
