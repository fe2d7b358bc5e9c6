"""HTTP explorer service.

Sessions hold a stack of seeds so undo restores the exact previous state;
the serialized state returned after an undo is byte-identical to the one
served before the mutation.  All math happens server-side.
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .hive import build_delta, build_sigma, weight_to_text
from .lr import wt_to_partitions
from .seeds import Seed, extract_g_f, initial_seed, laurent_to_text, seed_from_dict, seed_to_dict


class SessionStore:
    def __init__(self, state_dir=None):
        self.sessions: dict[str, dict] = {}
        self.locks: dict[str, threading.Lock] = {}
        self.global_lock = threading.Lock()
        self.state_dir = Path(state_dir) if state_dir else None
        if self.state_dir:
            self.state_dir.mkdir(parents=True, exist_ok=True)
            for path in self.state_dir.glob("*.json"):
                data = json.loads(path.read_text())
                self.sessions[data["id"]] = {
                    "n": data["n"],
                    "stack": [seed_from_dict(s) for s in data["stack"]],
                    "history": [tuple(v) for v in data["history"]],
                }
                self.locks[data["id"]] = threading.Lock()

    def create(self, n: int) -> str:
        sid = uuid.uuid4().hex
        seed = initial_seed(build_delta(n), build_sigma(n))
        with self.global_lock:
            self.sessions[sid] = {"n": n, "stack": [seed], "history": []}
            self.locks[sid] = threading.Lock()
        self.snapshot(sid)
        return sid

    def get(self, sid: str) -> dict:
        try:
            return self.sessions[sid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {sid}")

    def lock(self, sid: str) -> threading.Lock:
        self.get(sid)
        return self.locks[sid]

    def drop(self, sid: str) -> None:
        with self.global_lock:
            self.get(sid)
            del self.sessions[sid]
            del self.locks[sid]
        if self.state_dir:
            (self.state_dir / f"{sid}.json").unlink(missing_ok=True)

    def snapshot(self, sid: str) -> None:
        if not self.state_dir:
            return
        sess = self.sessions[sid]
        data = {
            "id": sid,
            "n": sess["n"],
            "stack": [seed_to_dict(s) for s in sess["stack"]],
            "history": [list(v) for v in sess["history"]],
        }
        (self.state_dir / f"{sid}.json").write_text(json.dumps(data))


def state_payload(sid: str, sess: dict) -> dict:
    seed: Seed = sess["stack"][-1]
    q = seed.quiver
    vertices = []
    for v in q.vertices:
        w = seed.sigma[v]
        lam, mu, nu = wt_to_partitions(w, sess["n"])
        vertices.append(
            {
                "id": list(v),
                "frozen": v in q.frozen,
                "weight": weight_to_text(w),
                "partitions": {"lambda": list(lam), "mu": list(mu), "nu": list(nu)},
            }
        )
    return {
        "id": sid,
        "n": sess["n"],
        "quiver": q.to_dict(),
        "b_matrix": q.b_matrix(),
        "vertices": vertices,
        "history": [list(v) for v in sess["history"]],
        "dynkin_type": q.dynkin_type(),
    }


def _state_response(sid: str, sess: dict) -> Response:
    # json.dumps with sorted keys makes equal states byte-identical.
    body = json.dumps(state_payload(sid, sess), sort_keys=True)
    return Response(content=body, media_type="application/json")


def _parse_vertex(data, n: int) -> tuple:
    v = data.get("vertex") if isinstance(data, dict) else None
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in v)
    ):
        raise HTTPException(status_code=422, detail="body must be {\"vertex\": [i, j]}")
    return tuple(v)


def create_app(state_dir=None) -> FastAPI:
    app = FastAPI(title="hivecluster explorer")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(state_dir=state_dir)
    app.state.store = store

    @app.post("/sessions")
    async def create_session(request: Request):
        try:
            data = await request.json()
        except Exception:
            raise HTTPException(status_code=422, detail="body must be JSON")
        n = data.get("n") if isinstance(data, dict) else None
        if not isinstance(n, int) or isinstance(n, bool) or n < 3:
            raise HTTPException(status_code=422, detail="body must be {\"n\": N} with N >= 3")
        sid = store.create(n)
        sess = store.get(sid)
        return JSONResponse({"id": sid, "state": state_payload(sid, sess)}, status_code=201)

    @app.post("/sessions/{sid}/mutate")
    async def mutate(sid: str, request: Request):
        try:
            data = await request.json()
        except Exception:
            raise HTTPException(status_code=422, detail="body must be JSON")
        with store.lock(sid):
            sess = store.get(sid)
            v = _parse_vertex(data, sess["n"])
            seed: Seed = sess["stack"][-1]
            if v not in set(seed.quiver.vertices):
                raise HTTPException(status_code=404, detail=f"no vertex {list(v)}")
            if v in seed.quiver.frozen:
                raise HTTPException(status_code=409, detail=f"vertex {list(v)} is frozen")
            from .seeds import mutate_seed

            sess["stack"].append(mutate_seed(seed, v))
            sess["history"].append(v)
            store.snapshot(sid)
            return _state_response(sid, sess)

    @app.post("/sessions/{sid}/undo")
    async def undo(sid: str):
        with store.lock(sid):
            sess = store.get(sid)
            if len(sess["stack"]) == 1:
                raise HTTPException(status_code=409, detail="nothing to undo")
            sess["stack"].pop()
            sess["history"].pop()
            store.snapshot(sid)
            return _state_response(sid, sess)

    @app.get("/sessions/{sid}/state")
    async def get_state(sid: str):
        with store.lock(sid):
            sess = store.get(sid)
            return _state_response(sid, sess)

    @app.get("/sessions/{sid}/variable/{vertex}")
    async def get_variable(sid: str, vertex: str):
        try:
            i, j = (int(x) for x in vertex.split(","))
        except ValueError:
            raise HTTPException(status_code=422, detail="vertex must look like \"1,2\"")
        with store.lock(sid):
            sess = store.get(sid)
            seed: Seed = sess["stack"][0]
            current: Seed = sess["stack"][-1]
            v = (i, j)
            if v not in set(current.quiver.vertices):
                raise HTTPException(status_code=404, detail=f"no vertex {list(v)}")
            z = current.cluster[v]
            g, _f = extract_g_f(z, seed)
            order = seed.quiver.vertices
            dim = len(seed.sigma[order[0]])
            weight = tuple(
                sum(gi * seed.sigma[u][k] for gi, u in zip(g, order)) for k in range(dim)
            )
            return {
                "vertex": [i, j],
                "laurent": laurent_to_text(z, order),
                "g_vector": {f"{u[0]},{u[1]}": gi for u, gi in zip(order, g) if gi},
                "weight": weight_to_text(weight),
            }

    @app.delete("/sessions/{sid}")
    async def delete_session(sid: str):
        store.drop(sid)
        return Response(status_code=204)

    return app
