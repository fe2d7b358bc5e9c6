export type VertexId = [number, number];

export interface QuiverDto {
  n: number;
  vertices: { id: VertexId; frozen: boolean }[];
  arrows: { from: VertexId; to: VertexId; mult: number }[];
}

export interface VertexInfo {
  id: VertexId;
  frozen: boolean;
  weight: string;
  partitions: { lambda: number[]; mu: number[]; nu: number[] };
}

export interface SessionState {
  id: string;
  n: number;
  quiver: QuiverDto;
  b_matrix: number[][];
  vertices: VertexInfo[];
  history: VertexId[];
  dynkin_type: string | null;
}

export interface VariableInfo {
  vertex: VertexId;
  laurent: string;
  g_vector: Record<string, number>;
  weight: string;
}
