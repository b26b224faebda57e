// Wire types mirroring the service's JSON shapes.

export interface ParameterInfo {
  name: string;
  tokens: string[];
  declaredType: string;
}

export interface MethodInfo {
  name: string;
  tokens: string[];
  returnType: string;
  parameters: ParameterInfo[];
}

export interface InterfaceModelInfo {
  sourceFile: string;
  sourceType: "java" | "wsdl";
  interfaceName: string;
  methods: MethodInfo[];
}

export interface ProjectSummary {
  id: string;
  createdAt: string;
  updatedAt: string;
  model: InterfaceModelInfo;
  keywords: string[];
  annotationCount: number;
}

export interface ProviderInfo {
  id: string;
  displayName: string;
  baseUrl: string;
  kind: "local-file" | "http";
  languages: string[];
}

export interface DefinitionRecord {
  term: string;
  language: string;
  source: string;
  definition: string;
}

export interface AnnotationBody {
  methodName: string;
  parameterName: string | null;
  term: string;
  language: string;
  source: string;
  definition: string;
}

export interface ConceptMatchInfo {
  concept: string;
  matchedKeyword: string | null;
  kind: "direct" | "expansion" | "none";
  nameScore: number;
  definitionScore: number | null;
  combinedScore: number;
}

export interface MatchReportInfo {
  serviceId: string;
  totalScore: number;
  perConcept: ConceptMatchInfo[];
}

export type TargetMode = "method" | "parameter";
