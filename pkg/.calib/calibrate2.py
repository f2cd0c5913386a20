import json, sys
sys.path.insert(0, "/root/pkg/src")
from flowperc.sim.validation import fixed_cylinder_case

out = {}
def log(k, r):
    out[k] = {"stats": {kk: float(v) for kk, v in r.stats.items()}, "runtime": r.runtime_s}
    print(k, out[k], flush=True)
    json.dump(out, open("/root/pkg/.calib/calib2.json", "w"), indent=1)

for beta in (0.0, 0.5):
    r = fixed_cylinder_case(100, resolution=24, t_end=150.0, t_stats=80.0,
                            lx=24.0, ly=12.0, xc=8.0, marker_retract=beta)
    log(f"desk24_b{beta}", r)
for beta in (0.0, 0.5):
    r = fixed_cylinder_case(100, resolution=32, t_end=250.0, t_stats=65.0,
                            marker_retract=beta)
    log(f"val32_b{beta}", r)
print("done", flush=True)
