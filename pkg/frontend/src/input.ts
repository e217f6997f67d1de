// Steering input: a key-hold ramp emulating a wheel angle (the study rig's
// force-feedback wheel has no browser equivalent), or a gamepad axis mapped
// linearly.  Positive angles steer left, matching the simulation convention.

export interface InputParams {
    rampRate: number;    // rad/s while a key is held
    returnRate: number;  // rad/s decay toward 0 after release
    maxAngle: number;    // rad clamp
}

export const DEFAULT_INPUT: InputParams = {
    rampRate: 1.5,
    returnRate: 3.0,
    maxAngle: 2 * Math.PI,
};

export class SteeringInput {
    private left = false;
    private right = false;
    private gamepadAxis: number | null = null;
    angle = 0;

    constructor(private params: InputParams = DEFAULT_INPUT) {}

    keyDown(key: string): void {
        if (key === "ArrowLeft" || key === "a") this.left = true;
        if (key === "ArrowRight" || key === "d") this.right = true;
    }

    keyUp(key: string): void {
        if (key === "ArrowLeft" || key === "a") this.left = false;
        if (key === "ArrowRight" || key === "d") this.right = false;
    }

    // axis in [-1, 1], positive = stick right; null releases gamepad control
    setGamepadAxis(axis: number | null): void {
        this.gamepadAxis = axis === null ? null : Math.max(-1, Math.min(1, axis));
    }

    update(dt: number): number {
        const p = this.params;
        if (this.gamepadAxis !== null) {
            this.angle = -this.gamepadAxis * p.maxAngle;
            return this.angle;
        }
        const held = (this.left ? 1 : 0) - (this.right ? 1 : 0);
        if (held !== 0) {
            this.angle += held * p.rampRate * dt;
        } else if (this.angle > 0) {
            this.angle = Math.max(0, this.angle - p.returnRate * dt);
        } else if (this.angle < 0) {
            this.angle = Math.min(0, this.angle + p.returnRate * dt);
        }
        this.angle = Math.max(-p.maxAngle, Math.min(p.maxAngle, this.angle));
        return this.angle;
    }
}
