"""命令行入口：orbit、spectrum、verify、fit、classify

标准输出只写 JSON 报告，日志与错误信息写到标准错误。
退出码：0 成功，1 验证失败，2 参数或解析错误。
"""
import argparse
import json
import sys
from typing import List, Optional

from pydantic import BaseModel

from app.config.settings import settings
from app.factory.verifier_factory import VerifierFactory
from app.models.errors import TrackCapacityError
from app.models.schema import (
    ClassifyReport,
    FitReport,
    OrbitReportModel,
    SpectrumReport,
    VerifyParams,
)
from app.services.enumeration import enumerate_syt
from app.services.promotion_engine import orbit, orbit_lengths, orbit_partition, spectrum_lcm
from app.services.quasipolynomial import fit_quasipolynomial
from app.services.track_system import tableau_to_tracks
from app.services.two_row_runs import build_arc_diagram, classify
from app.utils.logger import get_logger
from app.utils.tableau_parser import TableauParser

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# fit 未给出 --grid 时使用的 n 的个数
DEFAULT_FIT_POINTS = 14


def _emit(report: BaseModel, out: Optional[str]) -> None:
    text = json.dumps(report.model_dump(), ensure_ascii=False, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"报告已写入 {out}")
    print(text)


def _parse_ns(text: str) -> List[int]:
    """--n 既可以是逗号分隔的列表，也可以是 n0..n1 区间"""
    if ".." in text:
        low, high = TableauParser.parse_grid(text)
        return list(range(low, high + 1))
    return TableauParser.parse_int_vector(text)


def cmd_orbit(args: argparse.Namespace) -> int:
    T = TableauParser.load_tableau(args.tableau)
    report = orbit(T)
    data = report.to_dict(with_members=args.members)
    _emit(OrbitReportModel(**data), args.out)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    shape = TableauParser.parse_shape(args.shape)
    tableaux = list(enumerate_syt(shape))
    reports = orbit_partition(tableaux)
    report = SpectrumReport(
        shape=shape.to_list(),
        count=len(tableaux),
        orbit_lengths={str(k): v for k, v in orbit_lengths(reports).items()},
        lcm=str(spectrum_lcm(reports)),
    )
    _emit(report, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    verifier = VerifierFactory.create_verifier(args.theorem)
    params = VerifyParams(
        n=_parse_ns(args.n) if args.n else None,
        ell=TableauParser.parse_int_vector(args.ell) if args.ell else None,
        r=TableauParser.parse_int_vector(args.r) if args.r else None,
        shape=TableauParser.parse_shape(args.shape).to_list() if args.shape else None,
        grid=list(TableauParser.parse_grid(args.grid)) if args.grid else None,
    )
    report = verifier.run(params)
    _emit(report, args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_fit(args: argparse.Namespace) -> int:
    T = TableauParser.load_tableau(args.tableau)
    if args.grid:
        low, high = TableauParser.parse_grid(args.grid)
    else:
        low = T.size + (len(T.rows[0]) if T.rows else 0) + 1
        high = low + DEFAULT_FIT_POINTS - 1
    result = fit_quasipolynomial(
        T, range(low, high + 1), max_modulus=args.max_modulus, max_degree=args.max_degree
    )
    if not result.fitted:
        logger.warning("没有找到一致的拟合")
    _emit(FitReport(tableau=T.to_dict(), **result.to_dict()), args.out)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    Tn = TableauParser.load_tableau(args.tableau)
    lengths, mults, decomposition = classify(Tn)
    report = ClassifyReport(
        tableau=Tn.to_dict(),
        lengths=list(lengths),
        mults=list(mults),
        runs=decomposition.to_dict()["runs"],
        arc_diagram=build_arc_diagram(Tn).to_dict(),
    )
    try:
        ts = tableau_to_tracks(Tn)
        report.tracks = ts.to_dict()
        report.render = ts.render()
    except TrackCapacityError as e:
        report.note = str(e)
    _emit(report, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="promolab", description="标准杨表提升轨道的计算与定理验证")
    parser.add_argument("--jobs", type=int, default=None, help="并行进程数，覆盖 PROMOLAB_JOBS")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="计算杨表的提升周期与轨道")
    p.add_argument("--tableau", required=True, help="杨表文件（JSON 或 YAML）")
    p.add_argument("--members", action="store_true", help="输出轨道中的全部杨表")
    p.set_defaults(handler=cmd_orbit)

    p = sub.add_parser("spectrum", help="某个形状全部标准杨表的轨道长度谱")
    p.add_argument("--shape", required=True, help="形状，如 8,6")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("verify", help="在参数网格上验证定理")
    p.add_argument("theorem", help="定理编号: " + ", ".join(VerifierFactory.available()))
    p.add_argument("--n", help="n 的列表或区间，如 12 或 10..20")
    p.add_argument("--ell", help="游程长度向量，如 2,1")
    p.add_argument("--r", help="游程个数向量，如 1,1")
    p.add_argument("--shape", help="形状，如 2,1")
    p.add_argument("--grid", help="n 的区间 n0..n1")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fit", help="对 pr(T[n]) 做拟多项式拟合")
    p.add_argument("--tableau", required=True, help="杨表文件（JSON 或 YAML）")
    p.add_argument("--grid", help="n 的区间 n0..n1")
    p.add_argument("--max-modulus", type=int, default=None, help="尝试的最大模数")
    p.add_argument("--max-degree", type=int, default=None, help="尝试的最高次数")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("classify", help="两行杨表的游程分解与轨道系统")
    p.add_argument("--tableau", required=True, help="两行杨表文件（JSON 或 YAML）")
    p.set_defaults(handler=cmd_classify)

    for name in ("orbit", "spectrum", "verify", "fit", "classify"):
        sub.choices[name].add_argument("--out", help="同时把报告写入该文件")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.jobs is not None:
        settings.jobs = args.jobs

    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        # 领域错误都是 ValueError 的子类
        print(f"错误: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
