// WebSocket link carrying one protocol record per message.

import { ClientRecord, ServerRecord, decodeRecord, encodeRecord } from "./protocol";

export type ConnectionStatus = "connecting" | "open" | "closed";

export class SessionLink {
  private socket: WebSocket | null = null;
  status: ConnectionStatus = "connecting";
  onRecord: (record: ServerRecord) => void = () => {};
  onStatus: (status: ConnectionStatus) => void = () => {};

  constructor(readonly url: string) {}

  connect(): void {
    this.setStatus("connecting");
    const socket = new WebSocket(this.url);
    this.socket = socket;

    socket.addEventListener("open", () => {
      console.log(`connected to ${this.url}`);
      this.setStatus("open");
      this.send({ type: "hello" });
    });
    socket.addEventListener("close", () => {
      console.log("connection closed");
      this.setStatus("closed");
    });
    socket.addEventListener("error", (event) => {
      console.error("socket error", event);
    });
    socket.addEventListener("message", (event) => {
      const text = typeof event.data === "string" ? event.data : "";
      for (const line of text.split("\n")) {
        if (!line.trim()) continue;
        const record = decodeRecord(line);
        if (record) this.onRecord(record);
      }
    });
  }

  send(record: ClientRecord): boolean {
    if (this.socket === null || this.socket.readyState !== WebSocket.OPEN) return false;
    this.socket.send(encodeRecord(record));
    return true;
  }

  private setStatus(status: ConnectionStatus): void {
    this.status = status;
    this.onStatus(status);
  }
}
