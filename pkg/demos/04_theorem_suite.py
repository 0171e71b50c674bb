# Run the theorem registry over the default instance family, then demonstrate
# the failure-reporting path by injecting a classifier fault: the affected
# checks fail with witnesses that replay, and recover once the fault is gone.

from collections import Counter

from latmod import inject_classifier_fault
from latmod.harness import default_instances, list_checks, replay_violation, run_suite

instances = default_instances()
print(f"registry: {len(list_checks())} checks;"
      f" default family: {len(instances)} instances")

report = run_suite(instances)
counts = report.counts()
print(f"clean run: {counts['pass']} pass, {counts['fail']} fail,"
      f" {counts['skipped']} skipped")
skip_reasons = Counter(r.skip_reason for r in report.results if r.status == "skipped")
for reason, k in skip_reasons.most_common():
    print(f"  skipped ({reason}): {k}")

print("\ninjecting a fault that inverts the pseudo-primary classifier ...")
sample = [i for i in instances if i.name in ("zn-self-12", "zn-square-8")]
with inject_classifier_fault("pseudo_primary"):
    faulted = run_suite(sample)
    failures = faulted.failures()
    print(f"faulted run: {len(failures)} failing (instance, check) pairs")
    by_name = {i.name: i for i in sample}
    shown = 0
    for result in failures:
        for violation in result.violations[:1]:
            replays = replay_violation(by_name[result.instance], result.check_id, violation)
            print(f"  {result.instance} {result.check_id}: witness {violation}"
                  f" -> replays={replays}")
            shown += 1
        if shown >= 4:
            break

print("\nfault removed:", "all-pass" if run_suite(sample).ok() else "still failing")
