"""Writes stats50.csv and prints its statistics, computed in one pass
without grouping (independent of the C++ variant machinery)."""
import random
import sys

rng = random.Random(50)
rows = []
for t in range(50):
    length = rng.randint(1, 9)
    for e in range(length):
        rows.append((f"c{t:02d}", "abcdef"[rng.randrange(6 if t % 3 else 3)], f"2022-01-01T{t % 24:02d}:{e:02d}:00Z"))
rng.shuffle(rows)
with open(sys.argv[1], "w") as f:
    f.write("case_id,activity,timestamp\n")
    for r in rows:
        f.write(",".join(r) + "\n")

seqs = {}
for case, act, ts in rows:
    seqs.setdefault(case, []).append((ts, act))
traces = [tuple(a for _, a in sorted(v, key=lambda x: x[0])) for v in seqs.values()]
lengths = [len(t) for t in traces]
print("traces", len(traces))
print("variants", len(set(traces)))
print("activities", len({a for t in traces for a in t}))
print("avg_length %.17g" % (sum(lengths) / len(traces)))
print("min", min(lengths), "max", max(lengths))
print("avg_types %.17g" % (sum(len(set(t)) for t in traces) / len(traces)))
