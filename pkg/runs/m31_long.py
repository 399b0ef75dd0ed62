import time, sys
from mcg_workbench.cosets import low_index_search
from mcg_workbench.fpgrp import matsumoto_presentation
P=matsumoto_presentation(3,False)
t=time.time()
r=low_index_search(P,36,max_nodes=(int(sys.argv[1]) or None),checkpoint='/root/pkg/runs/m31-36.ckpt.json', progress=lambda n,k: print(n,k,time.time()-t,flush=True) if n % 5_000_000 == 0 else None)
print(r.nodes, r.complete, r.indices, time.time()-t)
