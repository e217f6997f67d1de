// Zone colors. The source material gives no exact values, so: safe is a
// neutral green, the caution onset is yellow, and the gradient runs
// monotonically yellow -> red as the risk level approaches 1.

export const SAFE_COLOR = "#2e7d32";

const YELLOW: [number, number, number] = [255, 208, 0];
const RED: [number, number, number] = [211, 47, 47];

export function zoneColor(level: number): string {
    if (level <= 0) return SAFE_COLOR;
    const a = Math.min(level, 1);
    const ch = YELLOW.map((y, i) => Math.round(y + (RED[i] - y) * a));
    return `rgb(${ch[0]}, ${ch[1]}, ${ch[2]})`;
}

export function bandGradient(towards: "left" | "right"): string {
    // risk grows toward the critical boundary: yellow at the caution edge,
    // red at the critical edge
    const from = towards === "left" ? "to left" : "to right";
    return `linear-gradient(${from}, ${zoneColor(0.01)}, ${zoneColor(1)})`;
}
