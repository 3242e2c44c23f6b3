import argparse
import io
import json
import logging
import sys

import pandas as pd
from django.core.management.base import BaseCommand, CommandError

from geometry.cone import cone_pipeline
from geometry.curves import check_birational_transfer, check_minimal_degree, gamma_contains
from geometry.exceptions import DomainError, GeometryError, VerificationFailure
from geometry.gf import build_field, check_field_axioms, find_epsilon, prime_power
from geometry.group import verify_group_structure
from geometry.planes import EpsilonPlane, ParabolaPlane, PlaneModel, check_parallel_classes, plane_axiom_check
from geometry.report import VerificationReport
from geometry.theorems import (DEFAULT_SAMPLES, check_bt_theorem, check_ebert_equivalence, check_main_theorem,
                               check_parabola_lemma, check_tangent_parabolas, default_bt_b)
from geometry.unitals import (PairClass, UnitalKind, UnitalSpec, classify, construct, construct_bm, ebert_check,
                             ebert_value, enumerate_pairs)
from geometry.verify import assert_unital
from reports.models import record_run
from reports.serializers import FieldSpecSerializer, PointSetSerializer, VerificationReportSerializer, jsonable

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_USAGE = 2

MODELS = ('standard', 'a-model', 'eps-model')
PARALLEL_CLASS_MAX_Q = 4


def _int_list(value):
    try:
        return [int(c) for c in value.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers, got {value!r}')


def common_arguments():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--p', type=int, help='characteristic')
    parser.add_argument('--e', type=int, help='q = p^e')
    parser.add_argument('--q', type=int, help='prime power q, instead of --p/--e')
    parser.add_argument('--modulus', type=_int_list, help='modulus coefficients, constant term first')
    parser.add_argument('--a', type=int, default=0)
    parser.add_argument('--b', type=int)
    parser.add_argument('--kind', choices=[k.value for k in UnitalKind], default=UnitalKind.BM.value)
    parser.add_argument('--model', choices=MODELS, default='standard')
    parser.add_argument('--model-a', type=int, help='parameter a of the parabola plane (defaults to --a)')
    parser.add_argument('--degree', type=int, action='append', help='degrees for min-degree (repeatable)')
    parser.add_argument('--out', help='write the output here instead of stdout')
    parser.add_argument('--format', choices=('json', 'csv'), default='json')
    parser.add_argument('--jobs', type=int)
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--samples', type=int, default=DEFAULT_SAMPLES)
    parser.add_argument('--save', action='store_true', help='store the report as a verification run')
    parser.add_argument('--timing', action='store_true', help='include elapsed time')
    parser.add_argument('--pretty', action='store_true', help='print elements as polynomials in t')
    return parser


class Command(BaseCommand):
    help = 'Construct and verify unitals of PG(2,q^2).'
    requires_system_checks = []

    def add_arguments(self, parser):
        common = common_arguments()
        subcommands = parser.add_subparsers(dest='subcommand', required=True)
        for name, help_text in (
            ('field-info', 'describe GF(q^2) and check the field axioms'),
            ('construct', 'print the points of a unital'),
            ('check-ebert', "decide Ebert's condition for (a, b)"),
            ('verify', 'intersection profile of a unital in a plane model'),
            ('enumerate', 'classify every pair (a, b)'),
            ('model-check', 'plane axioms and the unital theorems of a model'),
            ('group-check', 'the collineation group of the parabola plane'),
            ('cone-check', 'lift to the cone and project from Q'),
            ('curve-check', 'containment and birational transfer of Gamma_{a,b}'),
            ('min-degree', 'interpolation nullity of U_{a,b}'),
        ):
            subcommands.add_parser(name, parents=[common], help=help_text)

    def handle(self, *args, **options):
        self.options = options
        subcommand = options['subcommand']
        try:
            F = self.field()
            handler = getattr(self, 'do_' + subcommand.replace('-', '_'))
            output = handler(F)
        except VerificationFailure as exc:
            if exc.report is not None:
                self.emit(self.report_data(exc.report), exc.report)
            raise CommandError(str(exc), returncode=EXIT_FAILED)
        except GeometryError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)

        if isinstance(output, VerificationReport):
            if options['save']:
                record_run(subcommand, output, F, self.parameters())
            self.emit(self.report_data(output), output)
            if not output.passed:
                raise CommandError(f'{subcommand}: verification failed', returncode=EXIT_FAILED)
        else:
            self.emit(output)

    # -- input -------------------------------------------------------------

    def field(self):
        options = self.options
        if options['q'] is not None:
            p, e = prime_power(options['q'])
        elif options['p'] is not None and options['e'] is not None:
            p, e = options['p'], options['e']
        else:
            raise DomainError('give --q or both --p and --e')
        return build_field(p, e, options['modulus'])

    def element(self, F, name, default=None):
        value = self.options.get(name)
        if value is None:
            if default is None:
                raise DomainError(f'--{name.replace("_", "-")} is required')
            value = default
        return F.check(value)

    def parameters(self):
        keys = ('kind', 'a', 'b', 'model', 'model_a', 'degree', 'seed', 'samples')
        return {k: self.options[k] for k in keys if self.options.get(k) is not None}

    # -- output ------------------------------------------------------------

    def report_data(self, report):
        return VerificationReportSerializer(report, context={'timing': self.options['timing']}).data

    def emit(self, data, report=None):
        if self.options['format'] == 'csv':
            text = self.to_csv(data, report)
        else:
            text = json.dumps(jsonable(data), sort_keys=True, indent=2) + '\n'
        if self.options['out']:
            with open(self.options['out'], 'w', encoding='utf-8') as handle:
                handle.write(text)
        else:
            self.stdout.write(text, ending='')

    def to_csv(self, data, report):
        if report is not None:
            rows = [(kind, size, count) for (kind, size), count in sorted(report.kind_profile.items())]
            frame = pd.DataFrame(rows, columns=['kind', 'size', 'count'])
        elif 'points' in data:
            frame = pd.DataFrame(data['points'], columns=[f'x{i}' for i in range(data['dimension'] + 1)])
        else:
            frame = pd.DataFrame([jsonable(data)])
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False)
        return buffer.getvalue()

    # -- subcommands ---------------------------------------------------------

    def do_field_info(self, F):
        pretty = self.options['pretty']
        data = {'field': FieldSpecSerializer(F, context={'pretty': pretty}).data}
        show = F.format if pretty else (lambda x: x)
        data['primitive_element'] = show(F.primitive_element())
        data['subfield_size'] = len(F.subfield)
        if not F.is_even or (F.e > 1 and F.e % 2):
            eps, delta = find_epsilon(F)
            data['epsilon'] = show(eps)
            if delta is not None:
                data['delta'] = show(delta)
        if F.qsq <= 81:
            violations = check_field_axioms(F)
            data['axioms'] = 'pass' if not violations else violations
            if violations:
                self.emit(data)
                raise CommandError('field axioms violated', returncode=EXIT_FAILED)
        return data

    def unital_spec(self, F):
        kind = UnitalKind(self.options['kind'])
        if kind == UnitalKind.BT:
            return UnitalSpec(kind, F)
        return UnitalSpec(kind, F, a=self.element(F, 'a', 0), b=self.element(F, 'b'))

    def do_construct(self, F):
        points = construct(self.unital_spec(F))
        return PointSetSerializer(points, context={'pretty': self.options['pretty']}).data

    def do_check_ebert(self, F):
        a, b = self.element(F, 'a', 0), self.element(F, 'b')
        return {'ebert': ebert_check(F, a, b), 'class': classify(F, a, b).value, 'value': ebert_value(F, a, b)}

    def plane_model(self, F):
        model = self.options['model']
        if model == 'a-model':
            model_a = self.options['model_a']
            return ParabolaPlane(F, F.check(model_a if model_a is not None else self.options['a']))
        if model == 'eps-model':
            eps, _ = find_epsilon(F)
            return EpsilonPlane(F, eps, self.element(F, 'b', default_bt_b(F)))
        return PlaneModel(F)

    def do_verify(self, F):
        spec = self.unital_spec(F)
        model = self.plane_model(F)
        report = assert_unital(construct(spec), None if self.options['model'] == 'standard' else model,
                               jobs=self.options['jobs'])
        report.metadata['unital'] = spec.to_json()
        logger.info('verify %s in %s: %s', spec.kind.value, report.metadata['model'], report.verdict)
        return report

    def do_enumerate(self, F):
        records = enumerate_pairs(F, jobs=self.options['jobs'])
        report = VerificationReport('enumerate')
        counts = {c.value: 0 for c in PairClass}
        for record in records:
            counts[record.pair_class.value] += 1
            report.check('consistent', record.consistent,
                         {'a': record.a, 'b': record.b, 'class': record.pair_class.value, 'unital': record.unital})
        crosschecked = records[0].unital is not None if records else False
        if not crosschecked:
            sampled = check_ebert_equivalence(F, samples=self.options['samples'], seed=self.options['seed'],
                                              exhaustive_max_q=0, jobs=self.options['jobs'])
            report.merge(sampled)
            report.metadata['sampled'] = sampled.metadata
        report.metadata.update(q=F.q, pairs=len(records), classes=counts, crosschecked=crosschecked)
        return report

    def do_model_check(self, F):
        options = self.options
        model = self.plane_model(F)
        if isinstance(model, ParabolaPlane) and options['b'] is not None:
            a, b = model.a, self.element(F, 'b')
            report = check_main_theorem(F, a, b, seed=options['seed'], jobs=options['jobs'])
            report.merge(check_parabola_lemma(F, a, b))
            report.merge(check_tangent_parabolas(F, a, b))
        elif isinstance(model, EpsilonPlane):
            report = check_bt_theorem(F, model.b, seed=options['seed'], jobs=options['jobs'])
        else:
            report = plane_axiom_check(model, seed=options['seed'])
        if F.q <= PARALLEL_CLASS_MAX_Q:
            report.merge(check_parallel_classes(model))
        return report

    def do_group_check(self, F):
        return verify_group_structure(F, self.element(F, 'a', 0), self.element(F, 'b'))

    def do_cone_check(self, F):
        return cone_pipeline(F, self.element(F, 'a', 0), self.element(F, 'b'), check_profile=True,
                             jobs=self.options['jobs'])

    def do_curve_check(self, F):
        a, b = self.element(F, 'a', 0), self.element(F, 'b')
        report = check_birational_transfer(F, a, b)
        report.check('contains_bm_unital', gamma_contains(F, a, b, construct_bm(F, a, b)) == 1)
        return report

    def do_min_degree(self, F):
        return check_minimal_degree(F, self.element(F, 'a', 0), self.element(F, 'b'), self.options['degree'])


def run(argv, stdout=None, stderr=None):
    """Run ``unital`` with argv and return the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    command = Command(stdout=stdout, stderr=stderr)
    parser = command.create_parser('manage.py', 'unital')
    try:
        options = parser.parse_args(argv)
    except CommandError as exc:
        stderr.write(f'{exc}\n')
        return EXIT_USAGE
    try:
        command.execute(**vars(options))
    except CommandError as exc:
        stderr.write(f'{exc}\n')
        return exc.returncode
    return 0
