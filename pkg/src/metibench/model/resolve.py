from __future__ import annotations

import itertools
import shlex
import string
from collections import Counter

from ..exceptions import ConflictingBinding, SpecError, UnboundPlaceholder
from .spec import BenchmarkSpec, ConcreteInvocation, Diagnostic, ParamPoint, Variant

_formatter = string.Formatter()

SHELL = "/bin/sh"


def placeholders(template: str) -> list[str]:
    """Names of ``{name}`` placeholders in order of appearance; ``{{``/``}}`` are literal braces."""
    names: list[str] = []
    try:
        parsed = list(_formatter.parse(template))
    except ValueError as e:
        raise SpecError(f"malformed template {template!r}: {e}") from e
    for _, field, spec, conversion in parsed:
        if field is None:
            continue
        if not field.isidentifier() or spec or conversion:
            raise SpecError(f"unsupported placeholder {{{field}}} in {template!r}")
        names.append(field)
    return names


def substitute(template: str, values: dict[str, str]) -> str:
    for name in placeholders(template):
        if name not in values:
            raise UnboundPlaceholder(name, template)
    return template.format_map(values)


def spec_templates(spec: BenchmarkSpec) -> list[str]:
    out = [spec.command_template, *spec.env_template.values()]
    if spec.check_template:
        out.append(spec.check_template)
    return out


def param_points(spec: BenchmarkSpec) -> list[ParamPoint]:
    """Cartesian product of every parameter's domain, in declaration order."""
    names = list(spec.params)
    domains = [spec.params[n].expand() for n in names]
    return [ParamPoint(assignments=dict(zip(names, combo))) for combo in itertools.product(*domains)]


def _bindings(spec: BenchmarkSpec, variant: Variant, point: ParamPoint) -> dict[str, str]:
    if variant not in spec.effective_variants():
        raise SpecError(f"variant {variant.name!r} does not belong to spec {spec.id!r}")
    missing = set(spec.params) - set(point.assignments)
    extra = set(point.assignments) - set(spec.params)
    if missing or extra:
        raise SpecError(
            f"parameter point {point.label()} does not match params of {spec.id!r} "
            f"(missing: {sorted(missing)}, unknown: {sorted(extra)})"
        )
    for name in variant.bindings:
        if name in point.assignments:
            raise ConflictingBinding(name, variant.name)
    return {**variant.bindings, **point.assignments}


def _resolve(spec: BenchmarkSpec, variant: Variant, point: ParamPoint, template: str) -> ConcreteInvocation:
    values = _bindings(spec, variant, point)
    if spec.shell:
        argv = [SHELL, "-c", substitute(template, values)]
    else:
        argv = [substitute(token, values) for token in shlex.split(template)]
    env = {name: substitute(value, values) for name, value in spec.env_template.items()}
    return ConcreteInvocation(
        argv=argv,
        env=env,
        spec_id=spec.id,
        variant_name=variant.name,
        param_point=point,
    )


def resolve_invocation(spec: BenchmarkSpec, variant: Variant, point: ParamPoint) -> ConcreteInvocation:
    return _resolve(spec, variant, point, spec.command_template)


def resolve_check(spec: BenchmarkSpec, variant: Variant, point: ParamPoint) -> ConcreteInvocation | None:
    if not spec.check_template:
        return None
    return _resolve(spec, variant, point, spec.check_template)


def validate_spec(spec: BenchmarkSpec) -> list[Diagnostic]:
    """Every invariant violation of a spec; empty iff the spec is well-formed."""
    diags: list[Diagnostic] = []

    if not spec.id.strip():
        diags.append(Diagnostic(code="EmptyId", message="spec id is empty", severity="error"))

    counts = Counter(v.name for v in spec.variants)
    for name, n in counts.items():
        if n > 1:
            diags.append(
                Diagnostic(
                    code="DuplicateVariant",
                    message=f"variant name {name!r} declared {n} times in {spec.id!r}",
                    severity="error",
                )
            )

    for name, domain in spec.params.items():
        if not domain.expand():
            diags.append(
                Diagnostic(code="EmptyParamDomain", message=f"parameter {name!r} has no values", severity="error")
            )

    variants = spec.effective_variants()
    used: list[str] = []
    for template in spec_templates(spec):
        try:
            used.extend(placeholders(template))
        except SpecError as e:
            diags.append(Diagnostic(code="MalformedTemplate", message=str(e), severity="error"))

    for name in dict.fromkeys(used):
        if name in spec.params:
            continue
        unbound = [v.name for v in variants if name not in v.bindings]
        if unbound:
            diags.append(
                Diagnostic(
                    code="UncoveredPlaceholder",
                    message=f"{{{name}}} is neither a parameter nor bound by variant(s) {', '.join(unbound)}",
                    severity="error",
                )
            )

    for v in variants:
        for name in v.bindings:
            if name in spec.params:
                diags.append(
                    Diagnostic(
                        code="ConflictingBinding",
                        message=f"variant {v.name!r} binds {name!r}, which is also a parameter",
                        severity="error",
                    )
                )

    if any(d.severity == "error" for d in diags):
        return diags

    diags.extend(_identical_variants(spec))
    return diags


def _identical_variants(spec: BenchmarkSpec) -> list[Diagnostic]:
    variants = spec.effective_variants()
    if len(variants) < 2:
        return []
    points = param_points(spec)
    resolved = {
        v.name: [(inv.argv, inv.env) for inv in (resolve_invocation(spec, v, p) for p in points)]
        for v in variants
    }
    out: list[Diagnostic] = []
    for a, b in itertools.combinations(variants, 2):
        if resolved[a.name] == resolved[b.name]:
            out.append(
                Diagnostic(
                    code="IdenticalVariants",
                    message=(
                        f"variants {a.name!r} and {b.name!r} resolve to the same command and environment "
                        "at every parameter point; they would measure the same program"
                    ),
                    severity="warning",
                )
            )
    return out
