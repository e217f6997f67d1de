// Connection state machine.  The client is a dumb terminal: it renders what
// the server sends and forwards steering angles; it never simulates physics
// locally.

import {
    HelloMessage,
    ProtocolError,
    QuestionMessage,
    ServerMessage,
    TickMessage,
    answerMessage,
    inputMessage,
    parseServerMessage,
} from "./protocol.js";

export type ConnectionStatus = "connecting" | "connected" | "closed" | "error";

export interface SocketLike {
    send(data: string): void;
    close(code?: number): void;
    onopen: (() => void) | null;
    onmessage: ((ev: { data: unknown }) => void) | null;
    onclose: ((ev: { code: number }) => void) | null;
    onerror: ((ev: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

const browserSocketFactory: SocketFactory = (url) => new WebSocket(url) as unknown as SocketLike;

export interface ClientEvents {
    onStatus?(status: ConnectionStatus, detail?: string): void;
    onHello?(msg: HelloMessage): void;
    onTick?(msg: TickMessage): void;
    onPause?(): void;
    onResume?(): void;
    onQuestion?(msg: QuestionMessage): void;
    onEnd?(answersRecorded: number): void;
}

export class CockpitClient {
    status: ConnectionStatus = "connecting";
    hello: HelloMessage | null = null;
    lastTick: TickMessage | null = null;
    protocolFault: string | null = null;

    private socket: SocketLike;

    constructor(url: string, private events: ClientEvents, factory: SocketFactory = browserSocketFactory) {
        this.socket = factory(url);
        this.socket.onopen = () => this.setStatus("connected");
        this.socket.onclose = () => this.setStatus("closed");
        this.socket.onerror = () => this.setStatus("error");
        this.socket.onmessage = (ev) => this.handleFrame(String(ev.data));
    }

    private setStatus(status: ConnectionStatus, detail?: string): void {
        this.status = status;
        this.events.onStatus?.(status, detail);
    }

    private handleFrame(data: string): void {
        let msg: ServerMessage;
        try {
            msg = parseServerMessage(data);
        } catch (err) {
            if (err instanceof ProtocolError) {
                // visible protocol-error state, no crash
                this.protocolFault = err.message;
                this.setStatus("error", err.message);
                return;
            }
            throw err;
        }
        switch (msg.type) {
            case "hello":
                this.hello = msg;
                this.events.onHello?.(msg);
                break;
            case "tick":
                this.lastTick = msg;
                this.events.onTick?.(msg);
                break;
            case "pause":
                this.events.onPause?.();
                break;
            case "resume":
                this.events.onResume?.();
                break;
            case "question":
                this.events.onQuestion?.(msg);
                break;
            case "end":
                this.events.onEnd?.(msg.answers_recorded);
                break;
        }
    }

    sendInput(steer: number): boolean {
        if (this.status !== "connected") return false;  // buffered drop; banner shows state
        this.socket.send(inputMessage(steer));
        return true;
    }

    sendAnswer(id: number, chosenIndex: number): boolean {
        if (this.status !== "connected") return false;
        this.socket.send(answerMessage(id, chosenIndex));
        return true;
    }

    close(): void {
        this.socket.close();
    }
}
