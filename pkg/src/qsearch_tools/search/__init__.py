from .amplification import AAPlan, AmplifiedSearch, aa_wrap_certain, deflated_oracle, plan_amplification
from .circuits import build_D, build_diffuser, build_W, f0_circuit, inline_marked_oracle, marked_oracle_gates
from .recurrence import (
    AmplitudeTrace,
    alpha_closed_form,
    alpha_recurrence,
    beta_recurrence,
    euler_bound_holds,
    optimal_reference,
    single_point_query_bound,
)
from .schedule import DiffuserSchedule, ScheduleParams, schedule_from_x
from .single_point import SearchTemplate, SinglePointResult, plan_single_point, single_point

__all__ = [
    "AAPlan",
    "AmplifiedSearch",
    "AmplitudeTrace",
    "DiffuserSchedule",
    "ScheduleParams",
    "SearchTemplate",
    "SinglePointResult",
    "aa_wrap_certain",
    "alpha_closed_form",
    "alpha_recurrence",
    "beta_recurrence",
    "build_D",
    "build_W",
    "build_diffuser",
    "deflated_oracle",
    "euler_bound_holds",
    "f0_circuit",
    "inline_marked_oracle",
    "marked_oracle_gates",
    "optimal_reference",
    "plan_amplification",
    "plan_single_point",
    "schedule_from_x",
    "single_point",
    "single_point_query_bound",
]
