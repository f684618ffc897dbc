"""Add timing probes at every invocation point, show the diff, strip them again."""
import difflib

from integdistill import ProbeTemplate, analyze, demo_source, instrument, parse, strip

source = demo_source()
report = analyze({"demo.moo": source})
result = instrument(source, report.invocation_points)

print("Probes (ids count per class):")
for probe in result.probes:
    print(f"  #{probe.id} line {probe.line}: {probe.text}")
print()

diff = difflib.unified_diff(
    source.splitlines(True), result.text.splitlines(True), "demo.moo", "demo.instrumented.moo", n=1
)
print("".join(diff))

# The rewritten program is still MiniOO, and stripping is exact.
parse(result.text)
assert strip(result.text) == source
print("strip(instrument(source)) == source")
print()

# Any single-line statements work as a template.  This one mirrors the
# DateTime/TimeSpan probe of the original tool.
datetime_style = ProbeTemplate(
    before=("DateTime start_time{id} = DateTime.Now;",),
    after=(
        "TimeSpan timeDiff{id} = DateTime.Now - start_time{id};",
        'Console.WriteLine("Line {0} took {1}", {line}, timeDiff{id}.TotalMilliseconds);',
    ),
)
lines = instrument(source, report.invocation_points, datetime_style).text.splitlines()
at = next(i for i, line in enumerate(lines) if "start_time3" in line)
print("\n".join(lines[at:at + 4]))
