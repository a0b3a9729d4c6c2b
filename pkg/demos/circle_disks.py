"""Points on concentric circles, ranges are random open disks.

Also shows the plain-text formats: the system and the partition are written
to a temporary directory and read back.
"""
# %%
import tempfile
from pathlib import Path

from lowcross import PotentialConfig, crossing_number, gen_circle_disks, partition, validate_partition
from lowcross.fileio import load_partition, load_setsystem, save_partition, save_setsystem

system = gen_circle_disks(600, circles=6, m=300, seed=4)
part, rep = partition(system, 30, PotentialConfig(2.0), "minweight", seed=4)
print(f"kappa={rep.kappa}, problems={validate_partition(system, part)}")

# %% round trip through files
with tempfile.TemporaryDirectory() as tmp:
    save_setsystem(system, str(Path(tmp) / "disks.ss.gz"))
    save_partition(part, str(Path(tmp) / "disks.part"))
    s2 = load_setsystem(str(Path(tmp) / "disks.ss.gz"))
    p2 = load_partition(str(Path(tmp) / "disks.part"))
print("reloaded kappa:", crossing_number(s2, p2).kappa)
