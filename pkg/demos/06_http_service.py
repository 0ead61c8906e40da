"""Drive the HTTP protocol end to end against a live service.

Uploads a CSV, opens a session, sets a view, fetches categorized
recommendations, and promotes the top enhance card into the current view
(exactly what the browser frontend does on a double-click).
"""
import json
import threading
import time
import urllib.request

import uvicorn

from nextviz.datasets import college_csv_bytes
from nextviz.service import create_app

PORT = 8765
BASE = f"http://127.0.0.1:{PORT}"

server = uvicorn.Server(
    uvicorn.Config(create_app(), host="127.0.0.1", port=PORT, log_level="error")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)


def call(method, path, body=None, content_type="application/json"):
    data = None
    if body is not None:
        data = body if isinstance(body, bytes) else json.dumps(body).encode()
    req = urllib.request.Request(f"{BASE}{path}", data=data, method=method)
    req.add_header("Content-Type", content_type)
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())["data"]


uploaded = call("POST", "/datasets?name=college", college_csv_bytes(), "text/csv")
print(f"uploaded dataset {uploaded['dataset_id']} with {len(uploaded['columns'])} columns")

session = call("POST", "/sessions", {"dataset_id": uploaded["dataset_id"]})["session_id"]
view = call("PUT", f"/sessions/{session}/view", {"attrs": ["SATAverage", "AverageCost"]})
print(f"current view: {view['view']['mark']}  ({view['chart']['n']} points)")

recs = call("GET", f"/sessions/{session}/recommendations?k=5")
print("\ncategories over the wire:")
promote_key = None
for cat in recs["categories"]:
    best = cat["items"][0]
    print(f"   {cat['category']['kind']:<12} {len(cat['items'])} items, "
          f"best {best['score']['objective']}={best['score']['value']:+.3f}")
    if cat["category"]["kind"] == "enhance":
        promote_key = best["key"]

promoted = call("POST", f"/sessions/{session}/promote", {"key": promote_key})
print(f"\npromoted {promote_key}")
print(f"current view now: {promoted['view']['channels']}")

events = call("GET", f"/sessions/{session}/log")["events"]
print(f"\ninteraction log: {[e['kind'] for e in events]}")

server.should_exit = True
thread.join(timeout=5)
