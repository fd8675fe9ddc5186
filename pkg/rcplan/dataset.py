"""Benchmark datasets: ten unique scrambles for each depth 1..20."""
import logging
from dataclasses import dataclass
from pathlib import Path

from rcplan import RcPlanError, serialise
from rcplan.moves import ActionSet
from rcplan.scramble import (
    MAX_DEPTH,
    MIN_DEPTH,
    ProblemInstance,
    derived_seed,
    generate_instance,
    import_scramble,
)

log = logging.getLogger(__name__)

DEPTHS = range(MIN_DEPTH, MAX_DEPTH + 1)
PER_DEPTH = 10
# Redraws allowed for one slot before giving up
MAX_ATTEMPTS = 1000


class GenerationExhausted(RcPlanError):
    pass


@dataclass(frozen=True)
class Dataset:
    name: str
    instances: tuple
    master_seed: int
    action_set: ActionSet

    def __len__(self):
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def by_id(self) -> dict:
        return {instance.id: instance for instance in self.instances}

    @property
    def save_data(self):
        return {
            "name": self.name,
            "master_seed": self.master_seed,
            "action_set": self.action_set.name,
            "instances": [instance.save_data for instance in self.instances],
        }

    @classmethod
    def from_data(cls, data):
        action_set = ActionSet[data["action_set"]]
        return cls(
            name=data["name"],
            instances=tuple(
                ProblemInstance.from_data(instance, action_set)
                for instance in data["instances"]
            ),
            master_seed=data["master_seed"],
            action_set=action_set,
        )

    def save(self, filename: Path):
        serialise.dump(self.save_data, filename, readable=True)

    @classmethod
    def load(cls, filename: Path):
        return cls.from_data(serialise.load(filename))


def instance_id(action_set: ActionSet, n: int, k: int) -> str:
    """
    Name the kth instance of depth n.

    >>> instance_id(ActionSet.QUARTER_12, 5, 3)
    'd1-n05-3'
    """
    return f"{action_set.dataset}-n{n:02d}-{k}"


def generate_dataset(
    action_set: ActionSet,
    master_seed: int,
    depths=DEPTHS,
    per_depth=PER_DEPTH,
    name=None,
    allow_any_depth=False,
) -> Dataset:
    """
    Generate per_depth instances for each depth, all in distinct states.

    The kth instance of depth n uses a seed derived from
    (master_seed, n, k, attempt). A scramble reaching an already used
    state is redrawn with the next attempt number.
    """
    seen = set()
    instances = []
    for n in depths:
        for k in range(per_depth):
            for attempt in range(MAX_ATTEMPTS):
                instance = generate_instance(
                    n,
                    action_set,
                    derived_seed(master_seed, n, k, attempt),
                    instance_id=instance_id(action_set, n, k),
                    allow_any_depth=allow_any_depth,
                )
                if instance.state not in seen:
                    break
                log.debug("%s collided on attempt %d", instance.id, attempt)
            else:
                raise GenerationExhausted(
                    f"no unique state for {instance.id} in {MAX_ATTEMPTS} attempts"
                )
            seen.add(instance.state)
            instances.append(instance)
    return Dataset(
        name=name or action_set.dataset,
        instances=tuple(instances),
        master_seed=master_seed,
        action_set=action_set,
    )


def import_scramble_file(filename: Path, action_set: ActionSet, name=None) -> Dataset:
    """
    Read one scramble per line into a dataset.

    Blank lines and lines starting with # are skipped. Instances are
    named after the file and their line number.
    """
    filename = Path(filename)
    name = name or filename.stem
    instances = []
    with open(filename, encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            instances.append(
                import_scramble(
                    line, action_set, instance_id=f"{name}-{number:03d}", line=number
                )
            )
    return Dataset(
        name=name, instances=tuple(instances), master_seed=0, action_set=action_set
    )
