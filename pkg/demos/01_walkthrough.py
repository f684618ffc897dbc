"""Walk through the analysis of the bundled three-class demo program.

Run with ``python demos/01_walkthrough.py``.
"""
from integdistill import analyze, demo_source, execution_order
from integdistill.report import render_defuse_log, render_invocations, render_metrics, render_paths_text

source = demo_source()
report = analyze({"demo.moo": source})

# Coupling methods are the roots of the def-use trees.  Class B couples to A
# through BM1 and BM2, and class C through CM7 and its constructor.
print("Coupling methods:")
for cm in report.coupling_methods + report.coupling_constructors:
    params = ", ".join(f"{name}: {cls}" for name, cls in cm.coupling_params)
    print(f"  {cm.method.owner}.{cm.method.signature}  <- {params}")
print()

# Each root-to-leaf walk of a tree is one test path.
print(render_paths_text(report.paths))

# The log shows why each child joined the tree: the parent reads a field
# that the child writes.
print(render_defuse_log(report.defuse_edges))

# A path runs leaf first.  Path 6 drives C through CM3 and CM6 before the
# coupling method CM7 sees its B and A arguments.
path = report.paths[5]
print(f"Execution order for path {path.id}:")
for step in execution_order(path, report.model):
    print("  " + str(step))
print()

print(render_invocations(report.invocation_points, report.invocation_summary))
print(render_metrics(report.class_metrics, report.usage))
