from __future__ import annotations

import itertools
import logging
from pathlib import Path
from typing import List, Optional

import typer
from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.prompt import Confirm
from rich.table import Table

from . import __version__
from .config import Settings, load_settings
from .exceptions import MetiBenchError, ProjectFileError, SpecError, SweepAborted, SweepError
from .journal.entries import Verdict
from .model.resolve import validate_spec
from .model.spec import RunPolicy, SweepGenerator, SweepSpec
from .project import Project, load_project, project_file_path, select_specs
from .stats.summary import summarize
from .ui.console import comparison_table, console, print_diagnostics, print_result_block, print_summary

log = logging.getLogger("metibench")

app = typer.Typer(help="metibench: measure, explain, test and improve benchmark results", no_args_is_help=True)
journal_app = typer.Typer(help="Analysis journal (expectations, observations, explanations, tests)")
app.add_typer(journal_app, name="journal")


def _print_version(value: Optional[bool]) -> None:
    if value:
        console.print(f"metibench {__version__}")
        raise typer.Exit()


def _setup_logging(level: str) -> None:
    logger = logging.getLogger("metibench")
    for h in list(logger.handlers):
        if isinstance(h, RichHandler):
            logger.removeHandler(h)
    handler = RichHandler(console=Console(stderr=True), show_path=False, show_time=False)
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


@app.callback()
def _global(
    ctx: typer.Context,
    version: Optional[bool] = typer.Option(
        None, "--version", callback=_print_version, is_eager=True, help="Show the version and exit"
    ),
    verbose: bool = typer.Option(False, "-v", "--verbose", help="Debug logging"),
    project_dir: Optional[Path] = typer.Option(
        None, "-C", "--project-dir", help="Project directory (default: METIBENCH_PROJECT_DIR or .)"
    ),
):
    """Global options."""
    try:
        settings = load_settings()
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)
    if project_dir is not None:
        settings.project_dir = project_dir.resolve()
    _setup_logging("DEBUG" if verbose else settings.log_level)
    ctx.obj = settings


def _settings(ctx: typer.Context) -> Settings:
    return ctx.obj if isinstance(ctx.obj, Settings) else Settings()


def _open(ctx: typer.Context) -> Project:
    try:
        return Project.open(_settings(ctx).project_dir)
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)


def _mode(ctx: typer.Context, mode: Optional[str]) -> str:
    chosen = (mode or _settings(ctx).mode).lower()
    if chosen not in ("mean", "min"):
        raise typer.BadParameter("must be 'mean' or 'min'", param_hint="--mode")
    return chosen


@app.command("init")
def init(
    ctx: typer.Context,
    yes: bool = typer.Option(False, "-y", "--yes", help="Overwrite an existing benchspec.json without asking"),
):
    """Scaffold benchspec.json (with the sort example) and .env settings."""
    from .config.init import scaffold_project

    settings = _settings(ctx)
    root = settings.project_dir
    path = project_file_path(root)
    if path.exists() and not yes:
        if not Confirm.ask(f"[bold]{path} exists. Overwrite?[/bold]", default=False):
            console.print("[yellow]Init cancelled[/yellow]")
            raise typer.Exit()
    written = scaffold_project(root, settings)
    console.print(f"[green]✅ Project created:[/green] {written}")
    console.print("[dim]Next: metibench journal expect sort \"mergesort beats quicksort\" && metibench run[/dim]")


@app.command("validate")
def validate(ctx: typer.Context):
    """Check every spec in benchspec.json for template and binding problems."""
    try:
        project = load_project(_settings(ctx).project_dir)
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)
    failed = False
    for spec in project.specs:
        diags = validate_spec(spec)
        if not diags:
            console.print(f"[green]✓[/green] {spec.id}")
            continue
        console.print(f"[bold]{spec.id}[/bold]")
        print_diagnostics(diags)
        failed = failed or any(d.severity == "error" for d in diags)
    if failed:
        raise typer.Exit(code=1)


@app.command("run")
def run(
    ctx: typer.Context,
    only: Optional[List[str]] = typer.Option(None, "--only", help="Run only this spec (repeatable)"),
    skip: Optional[List[str]] = typer.Option(None, "--skip", help="Skip this spec (repeatable)"),
    mode: Optional[str] = typer.Option(None, "--mode", help="Central value: mean|min"),
    timeout: Optional[float] = typer.Option(None, "--timeout", "-t", help="Kill a run after this many seconds"),
):
    """Measure the enabled benchmarks, store the results and print comparisons."""
    from .envcheck import capture_fingerprint, check_environment
    from .workflow import PointOutcome, preflight, run_session

    settings = _settings(ctx)
    mode = _mode(ctx, mode)
    project = _open(ctx)
    try:
        specs = select_specs(project.file, only, skip)
    except ProjectFileError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=2)
    if not specs:
        console.print("[yellow]No benchmarks selected.[/yellow]")
        return

    try:
        print_diagnostics(preflight(specs))
    except SpecError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)

    fingerprint = capture_fingerprint()
    print_diagnostics([d for d in check_environment(fingerprint) if d.severity != "note"])

    counter = itertools.count(1)

    def show(po: PointOutcome) -> None:
        point = f" [{po.point.label()}]" if po.point.assignments else ""
        console.rule(f"[bold]{po.spec.id}{point}")
        for rs in po.result_sets:
            print_result_block(rs, next(counter))
        # noise verdicts go above the table so they are not missed
        print_diagnostics(po.diagnostics)
        if po.result_sets:
            summaries = {rs.variant_name: summarize(rs.wall_times, rs.variant_name) for rs in po.result_sets}
            console.print(comparison_table(summaries, mode))
            print_summary(summaries, mode)

    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            TimeElapsedColumn(),
            console=console,
            transient=True,
        ) as progress:
            task = progress.add_task("Measuring...", total=None)

            def on_run(variant: str, n: int, m) -> None:
                progress.update(task, description=f"{variant}: run {n} ({m.wall_time * 1e3:.1f} ms)")

            outcome = run_session(
                project,
                specs,
                mode=mode,
                timeout=timeout or settings.timeout,
                fingerprint=fingerprint,
                on_run=on_run,
                on_point=show,
            )
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)

    print_diagnostics(outcome.reminders)
    console.print(f"[dim]Session {outcome.session.session_id} stored in {project.store.results_path}[/dim]")


@app.command("compare")
def compare_cmd(
    ctx: typer.Context,
    spec_ids: Optional[List[str]] = typer.Argument(None, help="Specs to compare (default: all)"),
    session: Optional[str] = typer.Option(None, "--session", help="Only results of this session"),
    mode: Optional[str] = typer.Option(None, "--mode", help="Central value: mean|min"),
    export_markdown: Optional[Path] = typer.Option(None, "--export-markdown", help="Write the tables as markdown"),
):
    """Re-render comparisons from stored results."""
    from .report.comparison import render_comparison
    from .report.document import latest_checks
    from .report.groups import latest_groups
    from .stats.detectors import detect_indistinguishable, noise_report
    from .store.results import comparison_guard

    mode = _mode(ctx, mode)
    project = _open(ctx)
    try:
        results = project.store.load_results(session_id=session)
        specs = select_specs(project.file, spec_ids or None) if spec_ids else project.file.specs
    except ProjectFileError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=2)
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)

    sessions = project.store.load_sessions()
    checks = latest_checks(project.store)
    md: list[str] = []
    shown = 0
    for spec in specs:
        for g in latest_groups(results, spec=spec, checks=checks):
            shown += 1
            label = f"{spec.id} [{g.point.label()}]" if g.point.assignments else spec.id
            console.rule(f"[bold]{label}")
            diags = []
            for name, rs in g.result_sets.items():
                diags.extend(noise_report(rs, project.file.noise).diagnostics(name))
            for a, b in itertools.combinations(g.result_sets.values(), 2):
                diags.extend(d for d in (detect_indistinguishable(a, b), comparison_guard(a, b, sessions)) if d)
            print_diagnostics(diags)
            summaries = g.summaries()
            console.print(comparison_table(summaries, mode))
            print_summary(summaries, mode)
            md += [f"## {label}", "", render_comparison(summaries, mode)]
    if not shown:
        console.print("[yellow]No stored results match.[/yellow]")
    if export_markdown is not None:
        export_markdown.write_text("\n".join(md), encoding="utf-8")
        console.print(f"[green]Markdown written:[/green] {export_markdown}")


def _sweep_spec(project: Project, spec_id: str, param: str, values: Optional[str], span: Optional[str],
                log_scale: bool, policy: RunPolicy) -> SweepSpec:
    from .model.spec import RangeDomain

    if values:
        return SweepSpec(spec_id=spec_id, swept_param=param, points=[float(v) for v in values.split(",")],
                         per_point_policy=policy)
    if span:
        start, stop, count = span.split(":")
        gen = SweepGenerator(kind="log" if log_scale else "linear", start=float(start), stop=float(stop),
                             count=int(count))
        return SweepSpec(spec_id=spec_id, swept_param=param, generator=gen, per_point_policy=policy)
    for sw in project.file.sweeps.values():
        if sw.spec_id == spec_id and sw.swept_param == param:
            return sw
    domain = project.file.spec(spec_id).params.get(param)
    if isinstance(domain, RangeDomain):
        gen = SweepGenerator(kind=domain.kind, start=domain.start, stop=domain.stop, count=domain.count)
        return SweepSpec(spec_id=spec_id, swept_param=param, generator=gen, per_point_policy=policy)
    if domain is not None:
        return SweepSpec(spec_id=spec_id, swept_param=param,
                         points=[float(v.replace("_", "")) for v in domain.expand()], per_point_policy=policy)
    raise SpecError(f"{param!r} is not a parameter of {spec_id!r}")


@app.command("sweep")
def sweep(
    ctx: typer.Context,
    spec_id: str = typer.Argument(..., help="Spec to sweep"),
    param: str = typer.Option(..., "--param", help="Parameter to vary"),
    values: Optional[str] = typer.Option(None, "--values", help="Comma-separated values, e.g. 1000,2000,4000"),
    span: Optional[str] = typer.Option(None, "--range", help="START:STOP:COUNT"),
    log_scale: bool = typer.Option(False, "--log/--linear", help="Spacing of --range points"),
    calibrate: bool = typer.Option(False, "--calibrate", help="Choose the iteration count per point"),
    iter_param: Optional[str] = typer.Option(None, "--iter-param", help="Parameter that scales the iterations"),
    runs: Optional[int] = typer.Option(None, "--runs", help="Fixed number of runs per point"),
    out_dir: Optional[Path] = typer.Option(None, "--out", help="Directory for plot data (default: plots/)"),
    render: bool = typer.Option(False, "--render", help="Run gnuplot on the emitted script"),
    timeout: Optional[float] = typer.Option(None, "--timeout", "-t", help="Kill a run after this many seconds"),
):
    """Measure every variant across a range of one parameter and emit plot data."""
    from .envcheck import capture_fingerprint
    from .project import spec_file_hash
    from .sweep import emit_plot_data, render_plot, run_sweep

    settings = _settings(ctx)
    project = _open(ctx)
    try:
        spec = project.file.spec(spec_id)
        policy = RunPolicy.fixed(runs) if runs else spec.run_policy
        sw = _sweep_spec(project, spec_id, param, values, span, log_scale, policy)
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)
    except ValueError as e:
        console.print(f"[red]Error:[/red] invalid sweep: {e}")
        raise typer.Exit(code=2)

    directory = out_dir or (project.root / "plots")
    try:
        with project.store.lock():
            session = project.store.open_session(capture_fingerprint(), spec_file_hash(project.root))
            with Progress(SpinnerColumn(), TextColumn("{task.description}"), TimeElapsedColumn(),
                          console=console, transient=True) as progress:
                task = progress.add_task(f"Sweeping {param}...", total=None)
                result = run_sweep(
                    sw,
                    spec,
                    spec.effective_variants(),
                    store=project.store,
                    session=session,
                    thresholds=project.file.noise,
                    iter_param=iter_param,
                    calibrate=calibrate,
                    timeout=timeout or settings.timeout,
                    on_point=lambda v, _: progress.update(task, description=f"{param}={v:g} done"),
                )
    except SweepAborted as e:
        console.print(f"[red]Error:[/red] {e}")
        if e.partial.points:
            files = emit_plot_data(e.partial, directory)
            console.print(f"[yellow]Partial plot data:[/yellow] {files.data}")
        raise typer.Exit(code=1)
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)

    table = Table(title=f"{spec.id}: wall time over {param}", box=box.SIMPLE_HEAD)
    table.add_column(param, justify="right")
    if calibrate:
        table.add_column(iter_param or "iterations", justify="right")
    for v in result.variants:
        table.add_column(f"{v} [ms]", justify="right")
    for p in result.points:
        cells = [f"{p.value:g}"]
        if calibrate:
            cells.append(str(p.iterations))
        cells += [f"{p.summaries[v].mean * 1e3:.1f} ± {p.summaries[v].stddev * 1e3:.1f}" for v in result.variants]
        table.add_row(*cells)
    console.print(table)
    for p in result.points:
        for v, nr in p.noise.items():
            print_diagnostics(nr.diagnostics(f"{v} @ {param}={p.value:g}"))

    files = emit_plot_data(result, directory)
    console.print(f"[green]Plot data:[/green] {files.data}")
    console.print(f"[green]gnuplot script:[/green] {files.script}")
    if render:
        try:
            console.print(f"[green]Plot:[/green] {render_plot(files)}")
        except SweepError as e:
            console.print(f"[yellow]Warning:[/yellow] {e}")


@app.command("overhead")
def overhead(
    ctx: typer.Context,
    spec_id: str = typer.Argument(..., help="Spec to probe"),
    iter_param: str = typer.Option(..., "--iter-param", help="Parameter that linearly scales the work"),
    n_low: int = typer.Option(100, "--n-low", help="Lower iteration count (the other is twice this)"),
    variant: Optional[str] = typer.Option(None, "--variant", help="Variant to probe (default: first)"),
    runs: int = typer.Option(10, "--runs", help="Runs per iteration count"),
    mode: Optional[str] = typer.Option(None, "--mode", help="Central value: mean|min"),
    timeout: Optional[float] = typer.Option(None, "--timeout", "-t", help="Kill a run after this many seconds"),
):
    """Estimate the fixed start-up cost by timing n and 2n iterations."""
    from .runner.overhead import estimate_overhead
    from .sweep.run import base_point
    from .ui.console import format_time

    settings = _settings(ctx)
    mode = _mode(ctx, mode)
    project = _open(ctx)
    try:
        spec = project.file.spec(spec_id)
        v = spec.variant(variant) if variant else spec.effective_variants()[0]
    except KeyError:
        console.print(f"[red]Error:[/red] no variant {variant!r} in {spec_id!r}")
        raise typer.Exit(code=2)
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)

    try:
        with console.status(f"Timing {spec_id}/{v.name} at {n_low} and {2 * n_low} iterations..."):
            est = estimate_overhead(
                spec,
                v,
                base_point(spec),
                iter_param,
                n_low,
                mode=mode,
                policy=RunPolicy.fixed(runs),
                timeout=timeout or settings.timeout,
            )
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)

    table = Table(title=f"Overhead of {spec_id}/{v.name}", box=box.SIMPLE_HEAD)
    table.add_column("Quantity")
    table.add_column("Value", justify="right")
    table.add_row(f"t({est.n_low})", format_time(est.low.central(mode)))
    table.add_row(f"t({est.n_high})", format_time(est.high.central(mode)))
    table.add_row("Fixed overhead", format_time(est.fixed_overhead))
    table.add_row("Per iteration", format_time(est.per_iteration))
    table.add_row(f"Overhead share at {est.n_high}", f"{est.overhead_share:.1%}")
    table.add_row("System time share", f"{est.system_fraction:.1%}")
    console.print(table)
    for note in est.notes:
        console.print(f"[yellow]{note}[/yellow]")
    if est.overhead_share > 0.1:
        console.print(
            "[yellow]The fixed overhead is a large share of the runtime; "
            f"raise {iter_param} so the benchmark measures its workload.[/yellow]"
        )
    if est.system_fraction > project.file.noise.system_high:
        console.print("[yellow]System time is high; the benchmark may be measuring the kernel.[/yellow]")


@app.command("check-env")
def check_env():
    """Report CPU frequency scaling, turbo and power state."""
    from .envcheck import capture_fingerprint, check_environment, remediation_hints

    fp = capture_fingerprint()
    table = Table(title="Environment", box=box.SIMPLE_HEAD)
    table.add_column("Field", style="cyan")
    table.add_column("Value")

    def fmt(v) -> str:
        return "unknown" if v is None else ("yes" if v is True else "no" if v is False else str(v))

    for name in ("cpu_model", "governor", "frequency_fixed", "turbo_enabled", "on_ac_power", "os_descriptor",
                 "tool_version", "fingerprint_id"):
        table.add_row(name, fmt(getattr(fp, name)))
    console.print(table)

    diags = check_environment(fp)
    if not any(d.severity != "note" for d in diags):
        console.print("[green]No known noise sources detected.[/green]")
    print_diagnostics(diags)
    hints = remediation_hints(diags)
    if hints:
        console.print("\n💡 Suggested fixes (not run by metibench):")
        for code, cmd in hints.items():
            console.print(f"   {code}: [dim]{cmd}[/dim]", highlight=False)


@app.command("report")
def report(
    ctx: typer.Context,
    export_markdown: Optional[Path] = typer.Option(None, "--export-markdown", help="Write the report here"),
    export_json_path: Optional[Path] = typer.Option(None, "--export-json", help="Write the JSON export here"),
    mode: Optional[str] = typer.Option(None, "--mode", help="Central value: mean|min"),
):
    """Render the full report: claims, benchmarks, environment, expectations."""
    from .report import export_json, render_report

    mode = _mode(ctx, mode)
    project = _open(ctx)
    try:
        text = render_report(project, mode)
        if export_json_path is not None:
            export_json(project, export_json_path, mode)
            console.print(f"[green]JSON written:[/green] {export_json_path}")
    except MetiBenchError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)
    if export_markdown is not None:
        export_markdown.parent.mkdir(parents=True, exist_ok=True)
        export_markdown.write_text(text, encoding="utf-8")
        console.print(f"[green]Report written:[/green] {export_markdown}")
    elif export_json_path is None:
        console.print(text, markup=False, highlight=False, soft_wrap=True)


def _journal_call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (MetiBenchError, KeyError) as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=1)


@journal_app.command("expect")
def journal_expect(
    ctx: typer.Context,
    spec_id: str = typer.Argument(..., help="Spec the expectation is about"),
    text: str = typer.Argument(..., help="What you expect to see"),
):
    """Write down an expectation, ideally before measuring."""
    project = _open(ctx)
    _journal_call(project.file.spec, spec_id)
    entry = _journal_call(project.journal.record_expectation, spec_id, text)
    if entry.post_hoc:
        console.print(f"[yellow]#{entry.entry_id} recorded after results exist for {spec_id}; marked post hoc.[/yellow]")
    else:
        console.print(f"[green]#{entry.entry_id}[/green] expectation recorded")


@journal_app.command("observe")
def journal_observe(
    ctx: typer.Context,
    text: str = typer.Argument(..., help="What the results show"),
    ref: Optional[List[str]] = typer.Option(None, "--ref", help="entry:N, session:ID or spec:ID (repeatable)"),
):
    """Record an observation about the results."""
    entry = _journal_call(_open(ctx).journal.record_observation, text, ref or [])
    console.print(f"[green]#{entry.entry_id}[/green] observation recorded")


@journal_app.command("explain")
def journal_explain(
    ctx: typer.Context,
    text: str = typer.Argument(..., help="Why you think the observation holds"),
    ref: List[str] = typer.Option(..., "--ref", help="Observation or explanation it builds on (repeatable)"),
    untestable: bool = typer.Option(False, "--untestable", help="Record as a conjecture that cannot be tested"),
):
    """Propose an explanation; it stays a conjecture until tested."""
    entry = _journal_call(_open(ctx).journal.record_explanation, text, ref, untestable=untestable)
    console.print(f"[green]#{entry.entry_id}[/green] explanation recorded; test it with 'metibench journal test {entry.entry_id}'")


@journal_app.command("test")
def journal_test(
    ctx: typer.Context,
    explanation_id: int = typer.Argument(..., help="Explanation entry id"),
    text: str = typer.Argument(..., help="The experiment and what it showed"),
    verdict: str = typer.Option(..., "--verdict", help="confirmed|refuted|inconclusive|untestable"),
):
    """Attach a test to an explanation."""
    if verdict not in Verdict.__args__:
        raise typer.BadParameter("must be confirmed, refuted, inconclusive or untestable", param_hint="--verdict")
    entry = _journal_call(_open(ctx).journal.attach_test, explanation_id, text, verdict)
    console.print(f"[green]#{entry.entry_id}[/green] test recorded ({verdict})")


@journal_app.command("conjecture")
def journal_conjecture(
    ctx: typer.Context,
    explanation_id: int = typer.Argument(..., help="Explanation entry id"),
    text: str = typer.Argument("cannot be tested with the available setup", help="Why it cannot be tested"),
):
    """Mark an explanation as untestable; reports present it as a conjecture."""
    entry = _journal_call(_open(ctx).journal.mark_conjecture, explanation_id, text)
    console.print(f"[green]#{entry.entry_id}[/green] explanation #{explanation_id} marked as conjecture")


@journal_app.command("improve")
def journal_improve(
    ctx: typer.Context,
    text: str = typer.Argument(..., help="What was changed in the benchmarks or the analysis"),
    ref: Optional[List[str]] = typer.Option(None, "--ref", help="Entry it follows from (repeatable)"),
):
    """Record an improvement made after an explanation or test."""
    entry = _journal_call(_open(ctx).journal.record_improvement, text, ref or [])
    console.print(f"[green]#{entry.entry_id}[/green] improvement recorded")


@journal_app.command("list")
def journal_list(ctx: typer.Context):
    """Show every journal entry with its derived status."""
    journal = _open(ctx).journal
    entries = journal.entries()
    statuses = journal.statuses()
    if not entries:
        console.print("[yellow]Journal is empty.[/yellow]")
        return
    table = Table(title="Journal", box=box.SIMPLE_HEAD)
    table.add_column("#", justify="right")
    table.add_column("Kind")
    table.add_column("Status")
    table.add_column("Refs")
    table.add_column("Text")
    for e in entries:
        status = statuses.get(e.entry_id) or e.verdict or ("post hoc" if e.post_hoc else "")
        table.add_row(str(e.entry_id), e.kind, status, ", ".join(e.refs), e.text)
    console.print(table)


@journal_app.command("status")
def journal_status_cmd(ctx: typer.Context):
    """What is still open: untested or refuted explanations, missing expectations."""
    report = _open(ctx).journal.status()
    if report.empty:
        console.print("[green]Nothing open in the journal.[/green]")
        return
    if report.untested:
        console.print("[bold yellow]Untested — will render as conjecture[/bold yellow]")
        for e in report.untested:
            console.print(f"  #{e.entry_id} {e.text}")
    if report.refuted_unrevised:
        console.print("[bold red]Refuted without a revision[/bold red]")
        for e in report.refuted_unrevised:
            console.print(f"  #{e.entry_id} {e.text}")
    if report.missing_expectation:
        console.print("[bold yellow]No pre-registered expectation[/bold yellow]")
        for s in report.missing_expectation:
            console.print(f"  {s}")
    if report.post_hoc:
        console.print("[bold]Expectations recorded after results[/bold]")
        for e in report.post_hoc:
            console.print(f"  #{e.entry_id} {e.spec_id}: {e.text}")


def main() -> None:
    app()


if __name__ == "__main__":
    main()
