export interface CurveVertex {
  x: number;
  y: number;
  threshold: number | null;
  categories: string[];
}

export interface Point {
  x: number;
  y: number;
}

export interface ChangePayload {
  start: number;
  end: number;
  replacement: string;
  category: string;
  type: string;
  original?: string;
}

export interface AnonymizeResponse {
  output_text: string;
  changes: ChangePayload[];
  achieved: { privacy: number; utility: number };
  snapped_point: Point | null;
  warnings: string[];
  session_id: string;
}

export type ModeName = 'automatic' | 'privacy_only' | 'full';

export interface AnonymizeRequest {
  text: string;
  mode: ModeName | 'dp';
  point?: Point;
  session_id?: string;
  backend?: 'rules' | 'llm';
}
