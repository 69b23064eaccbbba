# Serving a model over HTTP and querying it like the decision console does.
#
# In production, run the server process against a saved model file:
#
#     randomwheel train --data data/crx.data --schema data/credit.schema \
#         --out model.rw --seed 7
#     python -m randomwheel.service --model model.rw --port 8000 \
#         --cors http://localhost:5173
#
# This demo drives the exact same app in-process through the test client,
# so it needs no open port.

from fastapi.testclient import TestClient

from randomwheel import WheelConfig, train
from randomwheel.service import create_app
from randomwheel.synth import synthetic_credit_dataset

dataset = synthetic_credit_dataset(n=300, seed=5)
model = train(dataset, WheelConfig(depth=2, trials=50, importance_shuffles=50, seed=23))
app = create_app(model, cors_origins=("http://localhost:5173",))
client = TestClient(app)

print("healthz:", client.get("/healthz").json())

# The console builds its form from this document: attribute kinds drive
# the control types, and categorical token lists populate the dropdowns.
meta = client.get("/v1/model").json()
print(f"model {meta['version']}: {len(meta['schema'])} attributes, "
      f"{meta['factor_count']} factors")
print("first categorical tokens:", meta["schema"][0]["tokens"])

# Applications are attribute-name maps; null (or absence) means unknown.
application = {
    "A01": "b", "A02": 31.5, "A03": 2.2, "A04": "u", "A05": "g",
    "A06": "c", "A07": "v", "A08": 1.5, "A09": "t", "A10": "t",
    "A11": 5, "A12": "t", "A13": "g", "A14": 120, "A15": 400,
}
verdict = client.post("/v1/recommendations", json=application).json()
print(f"label {verdict['label']} (approve={verdict['approve']}), "
      f"confidence {verdict['confidence'] * 100:.1f}%")
print("top attribution:", verdict["attributions"][0])

# Same question, same answer: the per-request seed derives from the model
# seed plus the canonicalized observation.
again = client.post("/v1/recommendations", json=application).json()
assert again == verdict
print("repeat request returned the identical document")

# Ranked factors back the console's transparency view.
factors = client.get("/v1/factors", params={"top": 3}).json()["factors"]
for row in factors:
    print(f"  {'+'.join(row['attributes'])}: importance {row['importance']:.4f}")
