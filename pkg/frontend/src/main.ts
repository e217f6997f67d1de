// Page bootstrap: read the server address and condition from the URL query,
// connect, and wire input/rendering/quiz together.
//
//   index.html?server=ws://127.0.0.1:8700/ws&condition=hud_on

import { CockpitClient } from "./client.js";
import { SteeringInput } from "./input.js";
import { QuizFlow } from "./quiz.js";
import { CockpitRenderer } from "./render.js";

const INPUT_SEND_HZ = 50;

function start(): void {
    const params = new URLSearchParams(window.location.search);
    const url = params.get("server") ?? "ws://127.0.0.1:8700/ws";
    const root = document.getElementById("cockpit") ?? document.body;

    const renderer = new CockpitRenderer(root);
    renderer.setCondition(params.get("condition") ?? "hud_on");

    const client = new CockpitClient(url, {
        onStatus: (status, detail) => renderer.showStatus(status, detail),
        onHello: (msg) => renderer.setCondition(String(msg.config.condition)),
        onTick: (msg) => renderer.renderTick(msg),
        onPause: () => quiz.onPause(),
        onQuestion: (msg) => quiz.onQuestion(msg),
        onResume: () => quiz.onResume(),
        onEnd: (n) => renderer.showStatus("closed", `session complete, ${n} answers`),
    });

    const quiz = new QuizFlow(root, (id, chosen) => client.sendAnswer(id, chosen));

    const steering = new SteeringInput();
    window.addEventListener("keydown", (ev) => steering.keyDown(ev.key));
    window.addEventListener("keyup", (ev) => steering.keyUp(ev.key));

    let lastSent = 0;
    let lastTime = performance.now();
    const pump = (now: number): void => {
        const dt = Math.min((now - lastTime) / 1000, 0.1);
        lastTime = now;
        const pads = navigator.getGamepads?.() ?? [];
        const pad = pads.find((p) => p !== null);
        steering.setGamepadAxis(pad ? pad.axes[0] ?? null : null);
        const angle = steering.update(dt);
        if (now - lastSent >= 1000 / INPUT_SEND_HZ) {
            client.sendInput(angle);
            lastSent = now;
        }
        requestAnimationFrame(pump);
    };
    requestAnimationFrame(pump);
}

start();
