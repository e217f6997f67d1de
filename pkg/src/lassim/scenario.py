"""Driving scenarios: a straight multi-lane road with lateral obstacles.

Coordinate convention: x runs along the road (forward), y is lateral with
y = 0 at the road centerline and +y to the left.  Road edges sit at
+/- (num_lanes * lane_width) / 2.  Obstacles push the critical boundary
inward from their side of the road; the caution boundary is always a fixed
padding inside the critical boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields

DEFAULT_LANE_WIDTH = 3.6        # m
DEFAULT_NUM_LANES = 2
DEFAULT_SPEED = 25.0            # m/s, constant for the whole scenario
DEFAULT_CAUTION_PADDING = 1.5   # m between caution and critical boundary
DEFAULT_TAPER_LENGTH = 10.0     # m of linear lead-in/lead-out around obstacles

LEFT = "left"
RIGHT = "right"


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario document."""


@dataclass(frozen=True)
class ObstacleSpec:
    """A lateral obstruction occupying [x_start, x_end] on one side of the road.

    ``intrusion`` is how far the critical boundary is pushed inward from that
    road edge over the obstacle body; it ramps linearly over the scenario's
    taper length before and after.
    """

    x_start: float
    x_end: float
    side: str
    intrusion: float

    def __post_init__(self) -> None:
        if self.side not in (LEFT, RIGHT):
            raise ScenarioError(f"obstacle side must be 'left' or 'right', got {self.side!r}")
        if not (self.x_start < self.x_end):
            raise ScenarioError(
                f"obstacle x_start ({self.x_start}) must be < x_end ({self.x_end})"
            )
        if not self.intrusion > 0:
            raise ScenarioError(f"obstacle intrusion must be > 0, got {self.intrusion}")


@dataclass(frozen=True)
class Corridor:
    """Lateral boundaries at one longitudinal station.

    Critical boundaries delimit the region the assistance system defends;
    caution boundaries sit exactly ``caution_padding`` inside them.  Caution
    boundaries may cross each other in narrow corridors.
    """

    left_critical: float
    right_critical: float
    left_caution: float
    right_caution: float


@dataclass(frozen=True)
class ScenarioSpec:
    road_length: float
    lane_width: float = DEFAULT_LANE_WIDTH
    num_lanes: int = DEFAULT_NUM_LANES
    speed: float = DEFAULT_SPEED
    caution_padding: float = DEFAULT_CAUTION_PADDING
    obstacles: tuple[ObstacleSpec, ...] = ()
    taper_length: float = DEFAULT_TAPER_LENGTH
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.road_length > 0:
            raise ScenarioError(f"road_length must be > 0, got {self.road_length}")
        if not self.lane_width > 0:
            raise ScenarioError(f"lane_width must be > 0, got {self.lane_width}")
        if self.num_lanes < 1:
            raise ScenarioError(f"num_lanes must be >= 1, got {self.num_lanes}")
        if not self.speed > 0:
            raise ScenarioError(f"speed must be > 0, got {self.speed}")
        if not self.caution_padding > 0:
            raise ScenarioError(f"caution_padding must be > 0, got {self.caution_padding}")
        if self.taper_length < 0:
            raise ScenarioError(f"taper_length must be >= 0, got {self.taper_length}")
        if self.seed < 0:
            raise ScenarioError(f"seed must be unsigned, got {self.seed}")
        obstacles = tuple(sorted(self.obstacles, key=lambda o: (o.x_start, o.x_end, o.side)))
        object.__setattr__(self, "obstacles", obstacles)
        for i, ob in enumerate(obstacles):
            if ob.x_start < 0 or ob.x_end > self.road_length:
                raise ScenarioError(
                    f"obstacle {i}: extent [{ob.x_start}, {ob.x_end}] outside road "
                    f"[0, {self.road_length}]"
                )
            if not ob.intrusion < self.width:
                raise ScenarioError(
                    f"obstacle {i}: intrusion {ob.intrusion} must be < road width {self.width}"
                )
        self._check_corridor_open()

    @property
    def width(self) -> float:
        return self.num_lanes * self.lane_width

    def lane_centers(self) -> list[float]:
        """Lateral positions of all lane centers, right to left."""
        return [
            -self.width / 2.0 + self.lane_width * (i + 0.5) for i in range(self.num_lanes)
        ]

    def _check_corridor_open(self) -> None:
        # Intrusions are piecewise linear, so the corridor is narrowest at a
        # taper breakpoint; checking those plus the road ends suffices.
        xs = {0.0, self.road_length}
        for ob in self.obstacles:
            for x in (
                ob.x_start - self.taper_length,
                ob.x_start,
                ob.x_end,
                ob.x_end + self.taper_length,
            ):
                xs.add(min(max(x, 0.0), self.road_length))
        for x in sorted(xs):
            left = self.width / 2.0 - _intrusion_at(self, LEFT, x)
            right = -self.width / 2.0 + _intrusion_at(self, RIGHT, x)
            if not right < left:
                raise ScenarioError(
                    f"critical boundaries cross near x={x:.3f} "
                    f"(left={left:.3f}, right={right:.3f}); reduce obstacle intrusions"
                )


def _intrusion_at(spec: ScenarioSpec, side: str, x: float) -> float:
    """Combined intrusion from all obstacles on one side (max of overlaps)."""
    taper = spec.taper_length
    worst = 0.0
    for ob in spec.obstacles:
        if ob.side != side:
            continue
        if ob.x_start <= x <= ob.x_end:
            ramp = ob.intrusion
        elif taper > 0 and ob.x_start - taper < x < ob.x_start:
            ramp = ob.intrusion * (x - (ob.x_start - taper)) / taper
        elif taper > 0 and ob.x_end < x < ob.x_end + taper:
            ramp = ob.intrusion * (1.0 - (x - ob.x_end) / taper)
        else:
            ramp = 0.0
        worst = max(worst, ramp)
    return worst


def corridor_at(spec: ScenarioSpec, x: float) -> Corridor:
    """Evaluate the critical/caution boundaries at longitudinal position x."""
    if not 0.0 <= x <= spec.road_length:
        raise ScenarioError(f"x={x} outside road [0, {spec.road_length}]")
    half = spec.width / 2.0
    left_critical = half - _intrusion_at(spec, LEFT, x)
    right_critical = -half + _intrusion_at(spec, RIGHT, x)
    return Corridor(
        left_critical=left_critical,
        right_critical=right_critical,
        left_caution=left_critical - spec.caution_padding,
        right_caution=right_critical + spec.caution_padding,
    )


def boundary_slope(spec: ScenarioSpec) -> float:
    """Max |d boundary / dx| over the scenario (Lipschitz constant of the taper)."""
    if not spec.obstacles:
        return 0.0
    if spec.taper_length == 0:
        return math.inf
    return max(ob.intrusion for ob in spec.obstacles) / spec.taper_length


# --- document parsing ----------------------------------------------------

_SCENARIO_KEYS = {f.name for f in fields(ScenarioSpec)}
_OBSTACLE_KEYS = {f.name for f in fields(ObstacleSpec)}


def _require_number(value: object, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ScenarioError(f"{where}: must be finite, got {value!r}")
    return float(value)


def _require_int(value: object, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{where}: expected an integer, got {value!r}")
    return value


def parse_scenario(text: str) -> ScenarioSpec:
    """Parse and validate a UTF-8 JSON scenario document.

    Unknown keys are rejected; missing keys fall back to defaults except
    ``road_length``, which is required.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    unknown = set(doc) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioError(f"unknown scenario field(s): {', '.join(sorted(unknown))}")
    if "road_length" not in doc:
        raise ScenarioError("road_length is required")

    kwargs: dict = {"road_length": _require_number(doc["road_length"], "road_length")}
    for key in ("lane_width", "speed", "caution_padding", "taper_length"):
        if key in doc:
            kwargs[key] = _require_number(doc[key], key)
    for key in ("num_lanes", "seed"):
        if key in doc:
            kwargs[key] = _require_int(doc[key], key)
    if "obstacles" in doc:
        raw = doc["obstacles"]
        if not isinstance(raw, list):
            raise ScenarioError("obstacles: expected a list")
        parsed = []
        for i, item in enumerate(raw):
            if not isinstance(item, dict):
                raise ScenarioError(f"obstacles[{i}]: expected an object")
            unknown = set(item) - _OBSTACLE_KEYS
            if unknown:
                raise ScenarioError(
                    f"obstacles[{i}]: unknown field(s): {', '.join(sorted(unknown))}"
                )
            missing = _OBSTACLE_KEYS - set(item)
            if missing:
                raise ScenarioError(
                    f"obstacles[{i}]: missing field(s): {', '.join(sorted(missing))}"
                )
            side = item["side"]
            if not isinstance(side, str):
                raise ScenarioError(f"obstacles[{i}].side: expected a string")
            try:
                parsed.append(
                    ObstacleSpec(
                        x_start=_require_number(item["x_start"], f"obstacles[{i}].x_start"),
                        x_end=_require_number(item["x_end"], f"obstacles[{i}].x_end"),
                        side=side,
                        intrusion=_require_number(item["intrusion"], f"obstacles[{i}].intrusion"),
                    )
                )
            except ScenarioError as exc:
                raise ScenarioError(f"obstacles[{i}]: {exc}") from None
        kwargs["obstacles"] = tuple(parsed)
    return ScenarioSpec(**kwargs)


def load_scenario(path: str) -> ScenarioSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def scenario_to_dict(spec: ScenarioSpec) -> dict:
    return {
        "road_length": spec.road_length,
        "lane_width": spec.lane_width,
        "num_lanes": spec.num_lanes,
        "speed": spec.speed,
        "caution_padding": spec.caution_padding,
        "obstacles": [
            {"x_start": o.x_start, "x_end": o.x_end, "side": o.side, "intrusion": o.intrusion}
            for o in spec.obstacles
        ],
        "taper_length": spec.taper_length,
        "seed": spec.seed,
    }


def scenario_from_dict(doc: dict) -> ScenarioSpec:
    return parse_scenario(json.dumps(doc))


def straight_road(road_length: float = 500.0) -> ScenarioSpec:
    """Obstacle-free two-lane default."""
    return ScenarioSpec(road_length=road_length)


def obstacle_course() -> ScenarioSpec:
    """Default obstacle scenario: alternating-side obstructions on a long road.

    Tapers are long (60 m) so the guidance preview sees the narrowing early
    enough to change lanes at highway speed.
    """
    obstacles = []
    side = RIGHT
    x = 250.0
    while x + 80.0 + 60.0 < 4000.0:
        obstacles.append(ObstacleSpec(x_start=x, x_end=x + 80.0, side=side, intrusion=2.0))
        side = LEFT if side == RIGHT else RIGHT
        x += 350.0
    return ScenarioSpec(road_length=4000.0, obstacles=tuple(obstacles), taper_length=60.0)
