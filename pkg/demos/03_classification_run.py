"""
A classification run over one field
===================================

Classify every candidate level of Q(sqrt-7) and print a short report.  The
full run over all fourteen fields is ``bianchi-cls report --out report.json``.
"""

import collections

from bianchi_cls import pipeline
from bianchi_cls.fpgroup import Limits

records = pipeline.run([7], Limits(max_cosets=20_000, max_seconds=None), low_index=0)
print(pipeline.render_report(records, "text"))

print(collections.Counter(r.status.value for r in records))

# how the 302 count depends on reading the norm bounds
for row in pipeline.count_conventions():
    print(row)
