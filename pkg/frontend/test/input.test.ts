import { describe, expect, it } from "vitest";

import { SteeringInput } from "../src/input.js";

const PARAMS = { rampRate: 1.0, returnRate: 2.0, maxAngle: 2.0 };

describe("keyboard steering ramp", () => {
    it("ramps while held and clamps at the max angle", () => {
        const input = new SteeringInput(PARAMS);
        input.keyDown("ArrowLeft");
        expect(input.update(0.5)).toBeCloseTo(0.5);
        expect(input.update(0.5)).toBeCloseTo(1.0);
        for (let i = 0; i < 10; i++) input.update(0.5);
        expect(input.angle).toBe(2.0);
    });

    it("returns toward zero after release without overshoot", () => {
        const input = new SteeringInput(PARAMS);
        input.keyDown("ArrowRight");
        input.update(1.0); // -1 rad
        input.keyUp("ArrowRight");
        expect(input.update(0.25)).toBeCloseTo(-0.5);
        expect(input.update(0.25)).toBeCloseTo(0.0);
        expect(input.update(0.25)).toBe(0);
    });

    it("opposing keys cancel", () => {
        const input = new SteeringInput(PARAMS);
        input.keyDown("ArrowLeft");
        input.keyDown("ArrowRight");
        expect(input.update(1.0)).toBe(0);
    });
});

describe("gamepad mapping", () => {
    it("maps the axis linearly to the wheel range, stick right steering right", () => {
        const input = new SteeringInput(PARAMS);
        input.setGamepadAxis(1.0);
        expect(input.update(0.016)).toBeCloseTo(-2.0);
        input.setGamepadAxis(-0.5);
        expect(input.update(0.016)).toBeCloseTo(1.0);
        input.setGamepadAxis(2.5); // out-of-range values clamp
        expect(input.update(0.016)).toBeCloseTo(-2.0);
    });

    it("falls back to the keyboard when the pad releases", () => {
        const input = new SteeringInput(PARAMS);
        input.setGamepadAxis(0.5);
        input.update(0.016);
        input.setGamepadAxis(null);
        input.keyDown("ArrowLeft");
        const angle = input.update(1.0);
        expect(angle).toBeGreaterThan(-1.0); // ramping back up from the pad angle
    });
});
