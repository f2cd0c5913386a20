import json, sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from flowperc.sim.solver import FlowSolver, SolverConfig
from flowperc.sim.bodies import ImmersedBody

def run(tag, res, lx, ly, xc, re, t_end, beta=0.0, iters=3):
    h = 1.0/res
    cfg = SolverConfig(nx=round(lx*res), ny=round(ly*res), h=h, re=re, force_iters=iters)
    body = ImmersedBody(xc, ly/2, 0.5, h, marker_retract=beta)
    s = FlowSolver(cfg, [body])
    kicked = False
    T, CD, CL = [], [], []
    t0 = time.time()
    while s.t < t_end - 1e-9:
        s.advance_to(round(s.t + 0.1, 9))
        if not kicked and s.t >= 2.0:
            s.add_velocity_kick(0.4, xc+1.5, ly/2+0.75); kicked = True
        f = body.last_force
        T.append(f.t); CD.append(f.cd); CL.append(f.cl)
    np.savez(f"/root/pkg/.calib/{tag}.npz", t=np.array(T), cd=np.array(CD), cl=np.array(CL))
    t_arr, cd_arr, cl_arr = np.array(T), np.array(CD), np.array(CL)
    m = t_arr >= t_end - 60
    print(f"{tag}: last60 cd={cd_arr[m].mean():.4f} clmax={cl_arr[m].max():.4f} wall={time.time()-t0:.0f}s", flush=True)

# saturation envelope at cheap res
run("sat16", 16, 24, 12, 8, 100, 400.0)
# force-iteration sensitivity
run("it1", 24, 24, 12, 8, 100, 110.0, iters=1)
# strong retraction
run("b064", 24, 24, 12, 8, 100, 110.0, beta=0.64)
print("done", flush=True)
