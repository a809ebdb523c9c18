// Wire types for the session protocol: one JSON record per WebSocket message.

export const PROTOCOL_VERSION = 1;

export interface LetterSlot {
  letter: string;
  radian: number;
  x: number;
  y: number;
}

export interface FirstLevel {
  radius: number;
  band: [number, number];
  slot_half_width: number;
  letters: LetterSlot[];
  dwell: { letter: string | null; progress: number };
}

export interface LayoutLabel {
  id: string;
  text: string;
  anchor_id: string;
  radian: number;
  range: [number, number];
  circle_index: number | null;
}

export interface LayoutCircle {
  index: number;
  radius: number;
  labels: LayoutLabel[];
}

export interface SecondLevel {
  center: [number, number];
  circles: LayoutCircle[];
  dropped: { id: string; text: string; anchor_id: string }[];
}

export interface Flight {
  id: string;
  text: string;
  anchor_id: string;
  pos2d: [number, number];
  pos3d: [number, number, number];
  t: number;
  s: number;
}

export interface Marker {
  id: string;
  name: string;
  pos2d: [number, number];
  front: boolean;
}

export interface Snapshot {
  type: "snapshot";
  v: number;
  t: number;
  phase: "idle" | "first_level" | "second_level" | "guiding" | "located";
  gaze: [number, number];
  metrics: { ticks: number; time_s: number; rotation_deg: number; success: boolean };
  located: string | null;
  target: { id: string; name: string } | null;
  first_level: FirstLevel | null;
  second_level: SecondLevel | null;
  flights: Flight[];
  markers: Marker[];
}

export interface EventRecord {
  type: "event";
  t: number;
  session: string;
  event: string;
  payload: Record<string, unknown>;
}

export interface HelloRecord {
  type: "hello";
  v: number;
}

export interface ErrorRecord {
  type: "error";
  code: string;
  msg: string;
}

export type ServerRecord = Snapshot | EventRecord | HelloRecord | ErrorRecord;

export type ClientRecord =
  | { type: "hello" }
  | { type: "start_trial"; target_id: string | null; condition: string }
  | { type: "gaze"; t: number; x: number; y: number }
  | { type: "button"; kind: "start" | "cancel" }
  | { type: "confirm"; object_id: string };

export function decodeRecord(data: string): ServerRecord | null {
  let parsed: unknown;
  try {
    parsed = JSON.parse(data);
  } catch {
    return null;
  }
  if (typeof parsed !== "object" || parsed === null) return null;
  const record = parsed as { type?: unknown };
  if (
    record.type === "snapshot" ||
    record.type === "event" ||
    record.type === "hello" ||
    record.type === "error"
  ) {
    return parsed as ServerRecord;
  }
  return null;
}

export function encodeRecord(record: ClientRecord): string {
  return JSON.stringify(record);
}
