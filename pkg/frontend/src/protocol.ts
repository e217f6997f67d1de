// Wire protocol: one JSON object per WebSocket text frame.
// The server is authoritative; this module only validates shapes.

export type ZoneKind = "safe" | "caution" | "critical";
export type ZoneSide = "none" | "left" | "right" | "both";

export interface ZoneInfo {
    kind: ZoneKind;
    side: ZoneSide;
    level: number;
}

export interface HudStationData {
    x_ahead: number;
    left_critical: number;
    right_critical: number;
    left_caution: number;
    right_caution: number;
}

export interface HudData {
    enabled: boolean;
    stations: HudStationData[];
    marker_y: number;
    zone: ZoneInfo;
    r_left: number;
    r_right: number;
}

export interface VehicleData {
    x: number;
    y: number;
    psi: number;
    theta: number;
}

export interface TorqueData {
    repel: number;
    lock: number;
    total: number;
    tbt: number;
}

export interface HelloMessage {
    type: "hello";
    protocol: number;
    version: string;
    duration: number;
    config: { condition: string; mode: string; [key: string]: unknown };
}

export interface TickMessage {
    type: "tick";
    seq: number;
    t: number;
    vehicle: VehicleData;
    hud: HudData;
    torque: TorqueData;
}

export interface QuestionMessage {
    type: "question";
    id: number;
    options: HudData[];
    scene: { x: number; y: number; speed: number };
}

export interface PauseMessage {
    type: "pause";
}

export interface ResumeMessage {
    type: "resume";
}

export interface EndMessage {
    type: "end";
    answers_recorded: number;
}

export type ServerMessage =
    | HelloMessage
    | TickMessage
    | QuestionMessage
    | PauseMessage
    | ResumeMessage
    | EndMessage;

export class ProtocolError extends Error {}

function isObject(v: unknown): v is Record<string, unknown> {
    return typeof v === "object" && v !== null && !Array.isArray(v);
}

function requireNumber(v: unknown, where: string): number {
    if (typeof v !== "number" || !Number.isFinite(v)) {
        throw new ProtocolError(`${where} must be a finite number`);
    }
    return v;
}

const ZONE_KINDS = new Set(["safe", "caution", "critical"]);
const ZONE_SIDES = new Set(["none", "left", "right", "both"]);

function validateZone(v: unknown, where: string): ZoneInfo {
    if (!isObject(v)) throw new ProtocolError(`${where} missing zone object`);
    const kind = v.kind;
    const side = v.side;
    if (typeof kind !== "string" || !ZONE_KINDS.has(kind)) {
        throw new ProtocolError(`${where}.kind invalid: ${String(kind)}`);
    }
    if (typeof side !== "string" || !ZONE_SIDES.has(side)) {
        throw new ProtocolError(`${where}.side invalid: ${String(side)}`);
    }
    return { kind: kind as ZoneKind, side: side as ZoneSide, level: requireNumber(v.level, `${where}.level`) };
}

function validateHud(v: unknown): HudData {
    if (!isObject(v)) throw new ProtocolError("tick missing hud object");
    if (typeof v.enabled !== "boolean") throw new ProtocolError("hud.enabled must be boolean");
    if (!Array.isArray(v.stations)) throw new ProtocolError("hud.stations must be an array");
    const stations = v.stations.map((s: unknown, i: number): HudStationData => {
        if (!isObject(s)) throw new ProtocolError(`hud.stations[${i}] must be an object`);
        return {
            x_ahead: requireNumber(s.x_ahead, `stations[${i}].x_ahead`),
            left_critical: requireNumber(s.left_critical, `stations[${i}].left_critical`),
            right_critical: requireNumber(s.right_critical, `stations[${i}].right_critical`),
            left_caution: requireNumber(s.left_caution, `stations[${i}].left_caution`),
            right_caution: requireNumber(s.right_caution, `stations[${i}].right_caution`),
        };
    });
    return {
        enabled: v.enabled,
        stations,
        marker_y: requireNumber(v.marker_y, "hud.marker_y"),
        zone: validateZone(v.zone, "hud.zone"),
        r_left: requireNumber(v.r_left, "hud.r_left"),
        r_right: requireNumber(v.r_right, "hud.r_right"),
    };
}

export function parseServerMessage(data: string): ServerMessage {
    let raw: unknown;
    try {
        raw = JSON.parse(data);
    } catch {
        throw new ProtocolError("frame is not valid JSON");
    }
    if (!isObject(raw) || typeof raw.type !== "string") {
        throw new ProtocolError("frame must be an object with a type field");
    }
    switch (raw.type) {
        case "hello": {
            if (!isObject(raw.config)) throw new ProtocolError("hello missing config");
            return raw as unknown as HelloMessage;
        }
        case "tick": {
            const vehicle = raw.vehicle;
            const torque = raw.torque;
            if (!isObject(vehicle) || !isObject(torque)) {
                throw new ProtocolError("tick missing vehicle/torque");
            }
            return {
                type: "tick",
                seq: requireNumber(raw.seq, "tick.seq"),
                t: requireNumber(raw.t, "tick.t"),
                vehicle: {
                    x: requireNumber(vehicle.x, "vehicle.x"),
                    y: requireNumber(vehicle.y, "vehicle.y"),
                    psi: requireNumber(vehicle.psi, "vehicle.psi"),
                    theta: requireNumber(vehicle.theta, "vehicle.theta"),
                },
                hud: validateHud(raw.hud),
                torque: {
                    repel: requireNumber(torque.repel, "torque.repel"),
                    lock: requireNumber(torque.lock, "torque.lock"),
                    total: requireNumber(torque.total, "torque.total"),
                    tbt: requireNumber(torque.tbt, "torque.tbt"),
                },
            };
        }
        case "question": {
            if (!Array.isArray(raw.options) || raw.options.length !== 4) {
                throw new ProtocolError("question must carry exactly 4 options");
            }
            const scene = raw.scene;
            if (!isObject(scene)) throw new ProtocolError("question missing scene");
            return {
                type: "question",
                id: requireNumber(raw.id, "question.id"),
                options: raw.options.map((o: unknown) => validateHud(o)),
                scene: {
                    x: requireNumber(scene.x, "scene.x"),
                    y: requireNumber(scene.y, "scene.y"),
                    speed: requireNumber(scene.speed, "scene.speed"),
                },
            };
        }
        case "pause":
            return { type: "pause" };
        case "resume":
            return { type: "resume" };
        case "end":
            return { type: "end", answers_recorded: requireNumber(raw.answers_recorded, "end.answers_recorded") };
        default:
            throw new ProtocolError(`unknown server message type ${raw.type}`);
    }
}

export function inputMessage(steer: number): string {
    return JSON.stringify({ type: "input", steer });
}

export function answerMessage(id: number, chosenIndex: number): string {
    return JSON.stringify({ type: "answer", id, chosen_index: chosenIndex });
}
