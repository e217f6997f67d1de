// DOM/canvas rendering.  The road scene is canvas; the HUD is plain DOM so
// its semantics stay assertable (band presence, marker zone class).  The
// renderer never re-derives risk: zone classes come verbatim from the
// server's zone field.

import { SAFE_COLOR, bandGradient, zoneColor } from "./colors.js";
import { ConnectionStatus } from "./client.js";
import { HudData, TickMessage } from "./protocol.js";

export interface HudViewOptions {
    lateralRange: number; // m shown either side of the road center
}

export const DEFAULT_VIEW: HudViewOptions = { lateralRange: 6.0 };

function el(tag: string, className?: string, id?: string): HTMLElement {
    const node = document.createElement(tag);
    if (className) node.className = className;
    if (id) node.id = id;
    return node;
}

function lateralPercent(y: number, range: number): number {
    // +y is left in road coords and on screen; clamp into the view
    const clamped = Math.max(-range, Math.min(range, y));
    return 50 - (clamped / range) * 50;
}

// Build the station bands and the vehicle marker into a container.
// Station 0 (nearest) renders at the bottom, like looking down the road.
export function renderHudInto(
    container: HTMLElement,
    hud: HudData,
    view: HudViewOptions = DEFAULT_VIEW,
): void {
    container.replaceChildren();
    const range = view.lateralRange;
    const n = hud.stations.length;
    for (let i = n - 1; i >= 0; i--) {
        const st = hud.stations[i];
        const row = el("div", "hud-station");
        row.dataset.xAhead = String(st.x_ahead);
        row.style.height = `${100 / Math.max(n, 1)}%`;

        const leftCrit = lateralPercent(st.left_critical, range);
        const leftCaut = lateralPercent(st.left_caution, range);
        const rightCrit = lateralPercent(st.right_critical, range);
        const rightCaut = lateralPercent(st.right_caution, range);

        const wallLeft = el("div", "hud-wall wall-left");
        wallLeft.style.left = "0%";
        wallLeft.style.width = `${Math.max(leftCrit, 0)}%`;
        row.appendChild(wallLeft);

        const bandLeft = el("div", "hud-band band-left");
        bandLeft.style.left = `${leftCrit}%`;
        bandLeft.style.width = `${Math.max(leftCaut - leftCrit, 0)}%`;
        bandLeft.style.background = bandGradient("left");
        row.appendChild(bandLeft);

        const bandRight = el("div", "hud-band band-right");
        bandRight.style.left = `${rightCaut}%`;
        bandRight.style.width = `${Math.max(rightCrit - rightCaut, 0)}%`;
        bandRight.style.background = bandGradient("right");
        row.appendChild(bandRight);

        const wallRight = el("div", "hud-wall wall-right");
        wallRight.style.left = `${rightCrit}%`;
        wallRight.style.width = `${Math.max(100 - rightCrit, 0)}%`;
        row.appendChild(wallRight);

        container.appendChild(row);
    }

    const marker = el("div", "hud-marker", undefined);
    marker.classList.add(`zone-${hud.zone.kind}`, `side-${hud.zone.side}`);
    marker.style.left = `${lateralPercent(hud.marker_y, range)}%`;
    marker.style.background = hud.zone.kind === "safe" ? SAFE_COLOR : zoneColor(hud.zone.level);
    marker.title = `zone ${hud.zone.kind} (${hud.zone.level.toFixed(2)})`;
    container.appendChild(marker);
}

export class CockpitRenderer {
    readonly hudLayer: HTMLElement;
    readonly torqueDial: HTMLElement;
    readonly conditionBanner: HTMLElement;
    readonly statusBanner: HTMLElement;
    private canvas: HTMLCanvasElement;
    private view: HudViewOptions;

    constructor(root: HTMLElement, view: HudViewOptions = DEFAULT_VIEW) {
        this.view = view;
        this.canvas = document.createElement("canvas");
        this.canvas.id = "road-canvas";
        this.canvas.width = 720;
        this.canvas.height = 360;
        root.appendChild(this.canvas);

        this.hudLayer = el("div", "hidden", "hud-layer");
        root.appendChild(this.hudLayer);

        this.torqueDial = el("div", undefined, "torque-dial");
        for (const name of ["repel", "lock", "tbt"]) {
            const rowEl = el("div", "torque-row");
            rowEl.appendChild(el("span", "torque-label")).textContent = name;
            const bar = el("div", "torque-bar", `torque-${name}`);
            rowEl.appendChild(bar);
            this.torqueDial.appendChild(rowEl);
        }
        root.appendChild(this.torqueDial);

        this.conditionBanner = el("div", undefined, "condition-banner");
        root.appendChild(this.conditionBanner);
        this.statusBanner = el("div", undefined, "status-banner");
        root.appendChild(this.statusBanner);
    }

    setCondition(condition: string): void {
        this.conditionBanner.textContent = condition === "hud_off" ? "HUD OFF" : "HUD ON";
        this.conditionBanner.dataset.condition = condition;
    }

    showStatus(status: ConnectionStatus, detail?: string): void {
        this.statusBanner.dataset.status = status;
        if (status === "error" && detail) {
            this.statusBanner.textContent = `protocol error: ${detail}`;
        } else if (status === "closed") {
            this.statusBanner.textContent = "disconnected - reconnect to continue";
        } else {
            this.statusBanner.textContent = status;
        }
    }

    renderTick(tick: TickMessage): void {
        this.drawRoad(tick);
        if (tick.hud.enabled) {
            this.hudLayer.classList.remove("hidden");
            renderHudInto(this.hudLayer, tick.hud, this.view);
        } else {
            // no HUD layer at all in the hud_off condition
            this.hudLayer.classList.add("hidden");
            this.hudLayer.replaceChildren();
        }
        this.renderTorque(tick);
    }

    private renderTorque(tick: TickMessage): void {
        const scale = 4.0; // Nm full bar
        for (const [name, value] of [
            ["repel", tick.torque.repel],
            ["lock", tick.torque.lock],
            ["tbt", tick.torque.tbt],
        ] as const) {
            const bar = this.torqueDial.querySelector<HTMLElement>(`#torque-${name}`);
            if (!bar) continue;
            bar.style.width = `${Math.min(Math.abs(value) / scale, 1) * 100}%`;
            bar.dataset.value = value.toFixed(3);
            bar.dataset.direction = value > 0 ? "left" : value < 0 ? "right" : "none";
        }
    }

    private drawRoad(tick: TickMessage): void {
        const ctx = this.canvas.getContext("2d");
        if (!ctx) return; // headless test environment
        const w = this.canvas.width;
        const h = this.canvas.height;
        ctx.fillStyle = "#20242b";
        ctx.fillRect(0, 0, w, h);
        ctx.fillStyle = "#3a4149";
        ctx.fillRect(w * 0.2, 0, w * 0.6, h);
        // scrolling center dashes keyed to longitudinal position
        ctx.strokeStyle = "#e8e8e8";
        ctx.lineWidth = 3;
        ctx.setLineDash([24, 36]);
        ctx.lineDashOffset = (tick.vehicle.x * 10) % 60;
        ctx.beginPath();
        ctx.moveTo(w / 2, 0);
        ctx.lineTo(w / 2, h);
        ctx.stroke();
        ctx.setLineDash([]);
        // own car: lateral position mirrors the road convention (+y left)
        const carX = w / 2 - (tick.vehicle.y / this.view.lateralRange) * (w * 0.3);
        ctx.fillStyle = "#cfd8dc";
        ctx.save();
        ctx.translate(carX, h * 0.8);
        ctx.rotate(-tick.vehicle.psi);
        ctx.fillRect(-10, -18, 20, 36);
        ctx.restore();
    }
}
