import { ApiError, ExplorerClient } from "./api.js";
import { exchangePreview, exportSeq, screen, vertexKey } from "./layout.js";
import type { SessionState, VertexId } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 640;

/** Renders server state and forwards clicks to the service; never mutates locally. */
export class ExplorerApp {
  private sessionId = "";
  private state: SessionState | null = null;
  private busy = false;

  constructor(
    private client: ExplorerClient,
    private root: HTMLElement,
  ) {}

  async start(n: number): Promise<void> {
    const { id, state } = await this.client.createSession(n);
    this.sessionId = id;
    this.state = state;
    this.render();
  }

  private async refresh(call: () => Promise<SessionState>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    try {
      this.state = await call();
      this.banner("");
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.banner(err.message);
      } else {
        this.banner(`network failure: ${String(err)}`);
      }
    } finally {
      this.busy = false;
      this.render();
    }
  }

  private banner(text: string): void {
    let el = this.root.querySelector<HTMLElement>(".banner");
    if (!el) {
      el = document.createElement("div");
      el.className = "banner";
      this.root.prepend(el);
    }
    el.textContent = text;
    el.style.display = text ? "block" : "none";
  }

  private render(): void {
    const st = this.state;
    if (!st) return;
    this.root.querySelector(".board")?.remove();
    const board = document.createElement("div");
    board.className = "board";

    const badge = document.createElement("div");
    badge.className = "badge";
    badge.textContent = st.dynkin_type ? `mutable part: ${st.dynkin_type}` : "mutable part: not Dynkin";
    board.appendChild(badge);

    board.appendChild(this.renderSvg(st));

    const controls = document.createElement("div");
    controls.className = "controls";
    const undo = document.createElement("button");
    undo.textContent = "undo";
    undo.disabled = st.history.length === 0;
    undo.onclick = () => this.refresh(() => this.client.undo(this.sessionId));
    controls.appendChild(undo);

    const exportBox = document.createElement("input");
    exportBox.className = "export";
    exportBox.readOnly = true;
    exportBox.value = exportSeq(st.history);
    exportBox.title = "mutation history as a CLI --seq string";
    controls.appendChild(exportBox);
    board.appendChild(controls);

    const info = document.createElement("pre");
    info.className = "info";
    board.appendChild(info);

    this.root.appendChild(board);
  }

  private renderSvg(st: SessionState): SVGSVGElement {
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(SIZE));
    svg.setAttribute("height", String(SIZE));
    const frozen = new Set(
      st.quiver.vertices.filter((v) => v.frozen).map((v) => vertexKey(v.id)),
    );
    const pos = (v: VertexId) => screen(v, st.n, SIZE);

    for (const a of st.quiver.arrows) {
      const p = pos(a.from);
      const q = pos(a.to);
      const line = document.createElementNS(SVG_NS, "line");
      const shrink = 0.18;
      line.setAttribute("x1", String(p.x + (q.x - p.x) * shrink));
      line.setAttribute("y1", String(p.y + (q.y - p.y) * shrink));
      line.setAttribute("x2", String(q.x - (q.x - p.x) * shrink));
      line.setAttribute("y2", String(q.y - (q.y - p.y) * shrink));
      line.setAttribute("class", "arrow");
      line.setAttribute("marker-end", "url(#head)");
      if (a.mult > 1) line.setAttribute("stroke-width", String(a.mult));
      svg.appendChild(line);
    }
    const defs = document.createElementNS(SVG_NS, "defs");
    defs.innerHTML =
      '<marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z"/></marker>';
    svg.prepend(defs);

    for (const entry of st.vertices) {
      const v = entry.id;
      const { x, y } = pos(v);
      const g = document.createElementNS(SVG_NS, "g");
      const isFrozen = frozen.has(vertexKey(v));
      const shape = document.createElementNS(
        SVG_NS,
        isFrozen ? "rect" : "circle",
      );
      if (isFrozen) {
        shape.setAttribute("x", String(x - 14));
        shape.setAttribute("y", String(y - 14));
        shape.setAttribute("width", "28");
        shape.setAttribute("height", "28");
      } else {
        shape.setAttribute("cx", String(x));
        shape.setAttribute("cy", String(y));
        shape.setAttribute("r", "15");
      }
      shape.setAttribute("class", isFrozen ? "vertex frozen" : "vertex mutable");
      g.appendChild(shape);

      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(x));
      label.setAttribute("y", String(y + 4));
      label.setAttribute("text-anchor", "middle");
      label.textContent = vertexKey(v);
      g.appendChild(label);

      g.addEventListener("click", () => {
        if (isFrozen) {
          shape.classList.add("rejected");
          setTimeout(() => shape.classList.remove("rejected"), 300);
          return;
        }
        void this.refresh(() => this.client.mutate(this.sessionId, v));
      });
      g.addEventListener("mouseenter", () => this.showPreview(entry.id, isFrozen));
      g.addEventListener("mouseleave", () => this.showInfo(""));
      svg.appendChild(g);
    }
    return svg;
  }

  private showPreview(v: VertexId, isFrozen: boolean): void {
    const st = this.state;
    if (!st) return;
    const entry = st.vertices.find((e) => vertexKey(e.id) === vertexKey(v));
    const lines: string[] = [];
    if (entry) {
      lines.push(`weight ${entry.weight}`);
      lines.push(
        `lambda=(${entry.partitions.lambda}) mu=(${entry.partitions.mu}) nu=(${entry.partitions.nu})`,
      );
    }
    if (!isFrozen) {
      const [pin, pout] = exchangePreview(st.quiver, v);
      lines.push(`exchange: x[${vertexKey(v)}]' * x[${vertexKey(v)}] = ${pin} + ${pout}`);
    }
    this.showInfo(lines.join("\n"));
    void this.client
      .variable(this.sessionId, v)
      .then((info) => {
        const shown = info.laurent.length > 200 ? `${info.laurent.slice(0, 200)}…` : info.laurent;
        this.showInfo(`${lines.join("\n")}\ncurrent variable: ${shown}`);
      })
      .catch(() => undefined);
  }

  private showInfo(text: string): void {
    const el = this.root.querySelector<HTMLElement>(".info");
    if (el) el.textContent = text;
  }
}

export function boot(base: string, n: number, root: HTMLElement): ExplorerApp {
  const app = new ExplorerApp(new ExplorerClient(base), root);
  void app.start(n).catch((err) => {
    root.textContent = `network failure: ${String(err)}`;
  });
  return app;
}
