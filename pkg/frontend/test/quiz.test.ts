import { beforeEach, describe, expect, it } from "vitest";

import { CockpitClient } from "../src/client.js";
import { QuizFlow } from "../src/quiz.js";
import { CockpitRenderer } from "../src/render.js";
import { HudData } from "../src/protocol.js";
import { LoopbackServer, makeHud, makeZone } from "./loopback.js";

function options(): [HudData, HudData, HudData, HudData] {
    return [
        makeHud(),
        makeHud({ marker_y: -2.9, zone: makeZone("caution", "right", 0.5), r_right: 0.5 }),
        makeHud({ marker_y: 2.9, zone: makeZone("caution", "left", 0.5), r_left: 0.5 }),
        makeHud({ marker_y: -3.7, zone: makeZone("critical", "right", 1), r_right: 1 }),
    ];
}

function setup() {
    document.body.innerHTML = '<div id="root"></div>';
    const root = document.getElementById("root")!;
    const renderer = new CockpitRenderer(root);
    const server = new LoopbackServer();
    let quiz!: QuizFlow;
    const client = new CockpitClient(
        "ws://loopback/ws",
        {
            onTick: (msg) => renderer.renderTick(msg),
            onPause: () => quiz.onPause(),
            onQuestion: (msg) => quiz.onQuestion(msg),
            onResume: () => quiz.onResume(),
        },
        server.factory,
    );
    quiz = new QuizFlow(root, (id, chosen) => client.sendAnswer(id, chosen));
    server.open();
    return { root, server, quiz };
}

describe("quiz flow", () => {
    beforeEach(() => {
        document.body.innerHTML = "";
    });

    it("completes four questions and emits well-formed answers", () => {
        const { root, server, quiz } = setup();
        server.hello("hud_on", "quiz");
        const picks = [2, 0, 3, 1];
        for (let q = 0; q < 4; q++) {
            server.tick(makeHud({ enabled: false, stations: [] }));
            server.pause();
            server.question(q + 1, options());

            const overlay = root.querySelector<HTMLElement>("#quiz-overlay")!;
            expect(overlay.classList.contains("hidden")).toBe(false);
            const buttons = overlay.querySelectorAll<HTMLButtonElement>(".quiz-option");
            expect(buttons.length).toBe(4);
            // every option thumbnail is a rendered HUD frame with a marker
            overlay.querySelectorAll(".quiz-thumb").forEach((thumb) => {
                expect(thumb.querySelector(".hud-marker")).not.toBeNull();
            });
            buttons[picks[q]].click();
            server.resume();
            expect(overlay.classList.contains("hidden")).toBe(true);
        }
        server.end(4);

        const answers = server.answers();
        expect(answers.length).toBe(4);
        answers.forEach((a, i) => {
            expect(Object.keys(a).sort()).toEqual(["chosen_index", "id", "type"]);
            expect(a.id).toBe(i + 1);
            expect(a.chosen_index).toBe(picks[i]);
        });
        expect(quiz.answered.map((a) => a.chosenIndex)).toEqual(picks);
        expect(quiz.answered.every((a) => a.responseTimeMs >= 0)).toBe(true);
    });

    it("ignores double answers for the same question", () => {
        const { root, server } = setup();
        server.hello("hud_on", "quiz");
        server.pause();
        server.question(1, options());
        const buttons = root.querySelectorAll<HTMLButtonElement>(".quiz-option");
        buttons[0].click();
        buttons[1].click();
        expect(server.answers().length).toBe(1);
        expect(server.answers()[0].chosen_index).toBe(0);
    });

    it("marks the chosen option and disables further clicks", () => {
        const { root, server } = setup();
        server.hello("hud_on", "quiz");
        server.pause();
        server.question(1, options());
        const buttons = root.querySelectorAll<HTMLButtonElement>(".quiz-option");
        buttons[3].click();
        expect(buttons[3].classList.contains("chosen")).toBe(true);
        expect([...buttons].every((b) => b.disabled)).toBe(true);
    });
});
