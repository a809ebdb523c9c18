import { GazeThrottle } from "./input";
import { SessionLink } from "./net";
import { Snapshot } from "./protocol";
import { SnapshotView } from "./view";

const TICK_HZ = 60;
const CONFIRM_REACH = 0.35;

function main(): void {
  const canvas = document.getElementById("stage") as HTMLCanvasElement;
  const overlay = document.getElementById("overlay") as HTMLDivElement;
  const reconnect = document.getElementById("reconnect") as HTMLButtonElement;

  const resize = () => {
    canvas.width = window.innerWidth;
    canvas.height = window.innerHeight;
  };
  resize();
  window.addEventListener("resize", resize);

  const params = new URLSearchParams(location.search);
  const wsPort = params.get("ws") ?? "8766";
  const target = params.get("target");
  const condition = params.get("condition") ?? "ec3";

  const view = new SnapshotView(canvas);
  const throttle = new GazeThrottle(TICK_HZ);
  const link = new SessionLink(`ws://${location.hostname}:${wsPort}/`);

  let snapshot: Snapshot | null = null;
  let started = false;

  link.onStatus = (status) => {
    overlay.style.display = status === "open" ? "none" : "flex";
    overlay.querySelector("span")!.textContent =
      status === "connecting" ? "connecting…" : "disconnected";
  };
  link.onRecord = (record) => {
    if (record.type === "snapshot") {
      snapshot = record;
    } else if (record.type === "event") {
      console.log("event", record.event, record.payload);
    } else if (record.type === "error") {
      console.warn("engine error", record.code, record.msg);
    }
  };
  reconnect.addEventListener("click", () => link.connect());
  link.connect();

  canvas.addEventListener("pointermove", (event) => {
    const [x, y] = view.frame().fromPixel([event.clientX, event.clientY]);
    throttle.update(x, y);
  });

  window.addEventListener("keydown", (event) => {
    if (event.code === "Space") {
      if (!started) {
        link.send({ type: "start_trial", target_id: target, condition });
        started = true;
      }
      link.send({ type: "button", kind: "start" });
      event.preventDefault();
    } else if (event.code === "Enter") {
      confirmNearestFlight();
    } else if (event.code === "Escape") {
      link.send({ type: "button", kind: "cancel" });
    }
  });

  function confirmNearestFlight(): void {
    if (!snapshot || snapshot.flights.length === 0) return;
    const gaze = snapshot.gaze;
    let best = snapshot.flights[0];
    let bestDist = Infinity;
    for (const flight of snapshot.flights) {
      const dist = Math.hypot(flight.pos2d[0] - gaze[0], flight.pos2d[1] - gaze[1]);
      if (dist < bestDist) {
        best = flight;
        bestDist = dist;
      }
    }
    if (bestDist <= CONFIRM_REACH) {
      link.send({ type: "confirm", object_id: best.anchor_id });
    }
  }

  // Gaze messages drive the engine clock; send at the tick rate always.
  setInterval(() => {
    const message = throttle.poll(performance.now() / 1000);
    if (message) link.send({ type: "gaze", ...message });
  }, 1000 / (2 * TICK_HZ));

  const draw = () => {
    if (snapshot) view.render(snapshot);
    requestAnimationFrame(draw);
  };
  requestAnimationFrame(draw);
}

window.addEventListener("load", main);
