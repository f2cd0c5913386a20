"""Calibration probes for the fixed-cylinder validation case."""
import json, sys
sys.path.insert(0, "/root/pkg/src")
from flowperc.sim.validation import fixed_cylinder_case

out = {}
def log(k, r):
    out[k] = {"stats": r.stats, "runtime": r.runtime_s}
    print(k, r.stats, "runtime %.0fs" % r.runtime_s, flush=True)
    json.dump(out, open("/root/pkg/.calib/calib1.json", "w"), indent=1)

# resolution trend on the desk domain, beta=0
r = fixed_cylinder_case(100, resolution=24, t_end=150.0, t_stats=80.0,
                        lx=24.0, ly=12.0, xc=8.0)
log("desk24_b0", r)
# retraction effect at same resolution
r = fixed_cylinder_case(100, resolution=24, t_end=150.0, t_stats=80.0,
                        lx=24.0, ly=12.0, xc=8.0, marker_retract=0.5)
log("desk24_b05", r)
print("done", flush=True)
