"""Controller mode state machine with synchronized transitions.

Walking starts at the step onset matching the commanded turn direction;
leaving the walk waits for the next double support of the reference
schedule; episodic motions force a return to standing on completion; motion
stop freezes the setpoints with raised gains after a short settle delay.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..motion.gait import GaitSchedule
from ..motion.phase import EPISODIC, PERIODIC, PhaseSignal

STANDING = "standing"
WALKING = "walking"
EPISODIC_MODE = "episodic"
MOTION_STOP = "motion-stop"

MODES = (STANDING, WALKING, EPISODIC_MODE, MOTION_STOP)

STOP_FREEZE_DELAY = 0.5   # s between the stop request and the setpoint freeze
STOP_GAIN_FACTOR = 2.0    # position gain multiplier while frozen
RESET_POSE_DURATION = 3.0  # s ramp when leaving motion stop via reset


class TransitionError(ValueError):
    pass


@dataclass
class ModeMachine:
    schedule: GaitSchedule = field(default_factory=GaitSchedule)
    default_left_start: bool = True

    mode: str = STANDING
    phase: PhaseSignal | None = None
    pending_standing: bool = False
    episodic_clip: str | None = None
    stop_requested_at: float | None = None
    frozen: bool = False
    reset_started_at: float | None = None
    just_switched: bool = False

    def walk_start_phase(self, yaw_rate: float) -> float:
        """Turn left starts on a left step; turn right on a right step."""
        if yaw_rate > 0.0:
            return self.schedule.left_step_onset
        if yaw_rate < 0.0:
            return self.schedule.right_step_onset
        return (self.schedule.left_step_onset if self.default_left_start
                else self.schedule.right_step_onset)

    def request(self, target: str, now: float, yaw_rate: float = 0.0,
                clip_name: str | None = None, clip_duration: float | None = None):
        """Handle an operator transition request; may latch instead of switch."""
        if target not in MODES:
            raise TransitionError(f"unknown mode {target!r}; valid: {MODES}")
        self.just_switched = False
        if target == MOTION_STOP:
            self.mode = STANDING
            self.phase = None
            self.pending_standing = False
            self.episodic_clip = None
            self.stop_requested_at = now
            self.frozen = False
            self.just_switched = True
            return

        if self.stop_requested_at is not None or self.frozen:
            raise TransitionError("motion stop active; reset pose to resume")

        if target == STANDING:
            if self.mode == WALKING:
                self.pending_standing = True  # wait for double support
            elif self.mode != STANDING:
                self._enter_standing()
            return

        if target == WALKING:
            if self.mode == WALKING:
                return
            phi0 = self.walk_start_phase(yaw_rate)
            self.mode = WALKING
            self.phase = PhaseSignal(phi0, rate=0.0, mode=PERIODIC)
            self.pending_standing = False
            self.episodic_clip = None
            self.just_switched = True
            return

        if target == EPISODIC_MODE:
            if clip_name is None or clip_duration is None:
                raise TransitionError("episodic transition needs a clip")
            self.mode = EPISODIC_MODE
            self.phase = PhaseSignal(0.0, rate=1.0 / clip_duration, mode=EPISODIC)
            self.episodic_clip = clip_name
            self.pending_standing = False
            self.just_switched = True

    def _enter_standing(self):
        self.mode = STANDING
        self.phase = None
        self.pending_standing = False
        self.episodic_clip = None
        self.just_switched = True

    def reset_pose(self, now: float):
        """Leave motion stop by slowly moving to the default pose."""
        if self.stop_requested_at is None and not self.frozen:
            raise TransitionError("reset pose is only available in motion stop")
        self.reset_started_at = now
        self.stop_requested_at = None
        self.frozen = False

    def advance(self, now: float, phi_prev: float | None, phi_new: float | None,
                episodic_completed: bool):
        """Per decision tick: resolve latched and forced transitions."""
        self.just_switched = False
        if self.stop_requested_at is not None and not self.frozen:
            if now - self.stop_requested_at >= STOP_FREEZE_DELAY:
                self.frozen = True
        if self.reset_started_at is not None:
            if now - self.reset_started_at >= RESET_POSE_DURATION:
                self.reset_started_at = None
        if self.mode == WALKING and self.pending_standing:
            if phi_prev is not None and phi_new is not None and \
                    self._crossed_double_support(phi_prev, phi_new):
                self._enter_standing()
        elif self.mode == EPISODIC_MODE and episodic_completed:
            self._enter_standing()

    def _crossed_double_support(self, phi_prev: float, phi_new: float) -> bool:
        span = (phi_new - phi_prev) % 1.0
        for onset in self.schedule.double_support_onsets:
            if span >= (onset - phi_prev) % 1.0 > 0.0 or phi_new == onset:
                return True
        return False

    @property
    def resetting(self) -> bool:
        return self.reset_started_at is not None

    def reset_progress(self, now: float) -> float:
        if self.reset_started_at is None:
            return 1.0
        return min((now - self.reset_started_at) / RESET_POSE_DURATION, 1.0)
