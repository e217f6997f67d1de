// Freeze-frame anticipation quiz: the stream pauses, four candidate HUD
// frames appear labeled A-D, the participant picks one, and the choice plus
// response time goes back to the server.

import { QuestionMessage } from "./protocol.js";
import { DEFAULT_VIEW, HudViewOptions, renderHudInto } from "./render.js";

export interface AnswerEvent {
    id: number;
    chosenIndex: number;
    responseTimeMs: number;
}

const LABELS = ["A", "B", "C", "D"];

export class QuizFlow {
    readonly overlay: HTMLElement;
    answered: AnswerEvent[] = [];
    private askedAt = 0;
    private active: QuestionMessage | null = null;

    constructor(
        root: HTMLElement,
        private send: (id: number, chosenIndex: number) => void,
        private view: HudViewOptions = DEFAULT_VIEW,
        private now: () => number = () => performance.now(),
    ) {
        this.overlay = document.createElement("div");
        this.overlay.id = "quiz-overlay";
        this.overlay.classList.add("hidden");
        root.appendChild(this.overlay);
    }

    onPause(): void {
        this.overlay.classList.remove("hidden");
        this.overlay.replaceChildren();
        const note = document.createElement("div");
        note.className = "quiz-note";
        note.textContent = "Scene frozen - which HUD do you anticipate?";
        this.overlay.appendChild(note);
    }

    onQuestion(msg: QuestionMessage): void {
        this.active = msg;
        this.askedAt = this.now();
        const grid = document.createElement("div");
        grid.id = "quiz-options";
        msg.options.forEach((hud, index) => {
            const option = document.createElement("button");
            option.className = "quiz-option";
            option.dataset.index = String(index);
            const label = document.createElement("span");
            label.className = "quiz-label";
            label.textContent = LABELS[index];
            option.appendChild(label);
            const thumb = document.createElement("div");
            thumb.className = "quiz-thumb";
            renderHudInto(thumb, hud, this.view);
            option.appendChild(thumb);
            option.addEventListener("click", () => this.choose(index));
            grid.appendChild(option);
        });
        this.overlay.appendChild(grid);
    }

    choose(index: number): void {
        if (!this.active) return;
        const msg = this.active;
        this.active = null;
        const elapsed = this.now() - this.askedAt;
        this.answered.push({ id: msg.id, chosenIndex: index, responseTimeMs: elapsed });
        this.send(msg.id, index);
        const grid = this.overlay.querySelector("#quiz-options");
        grid?.querySelectorAll<HTMLButtonElement>(".quiz-option").forEach((b, i) => {
            b.disabled = true;
            if (i === index) b.classList.add("chosen");
        });
    }

    onResume(): void {
        this.active = null;
        this.overlay.classList.add("hidden");
        this.overlay.replaceChildren();
    }
}
