#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Records and reports of verification scenarios, with CSV/JSON emission"""

import sys
import io
import csv
import json
import math

SCHEMA_VERSION = 1

CSVCOLUMNS = ('scenario','n','sigma','lambda','R_or_t','computed_re','computed_im','target_re','target_im','abs_err','rel_err')


def _complex(value):
    if value is None:
        return None
    return complex(value)

def _number(value):
    """Float that survives JSON (nan and infinities as strings)"""
    if value is None:
        return None
    value = float(value)
    if math.isfinite(value):
        return value
    return repr(value)

def _unnumber(value):
    if value is None:
        return None
    return float(value)


class Record:
    """One evaluated point of a scenario

    ``computed`` and ``target`` are complex numbers; a record without a
    target carries its error directly (defects, residuals). ``provenance``
    names the computational path (closed-form, quadrature, series, ...);
    ``label`` names the quantity.
    """

    def __init__(self, scenario, n, sigma, lam, x, computed, target=None, abs_err=None, rel_err=None, provenance='closed-form', label='', judged=True):
        self.scenario = scenario
        self.n = None if n is None else int(n)
        self.sigma = sigma
        self.lam = _complex(lam)
        self.x = None if x is None else float(x)
        self.computed = _complex(computed)
        self.target = _complex(target)
        if abs_err is None and self.target is not None:
            abs_err = abs(self.computed - self.target)
        self.abs_err = None if abs_err is None else float(abs_err)
        if rel_err is None and abs_err is not None and self.target is not None and self.target != 0:
            rel_err = abs_err / abs(self.target)
        self.rel_err = None if rel_err is None else float(rel_err)
        self.provenance = provenance
        self.label = label
        self.judged = judged

    def error(self, relative=True):
        if relative and self.rel_err is not None:
            return self.rel_err
        return self.abs_err

    def csvrow(self):
        def fmt(value):
            return '' if value is None else repr(float(value))
        lam = '' if self.lam is None else (repr(self.lam.real) if self.lam.imag == 0 else str(self.lam))
        return [ self.scenario, str(self.n), self.sigma or '', lam, fmt(self.x),
                 fmt(self.computed.real), fmt(self.computed.imag),
                 fmt(None if self.target is None else self.target.real), fmt(None if self.target is None else self.target.imag),
                 fmt(self.abs_err), fmt(self.rel_err) ]

    def tojson(self):
        return {
            'scenario': self.scenario,
            'n': self.n,
            'sigma': self.sigma,
            'lambda': None if self.lam is None else [self.lam.real, self.lam.imag],
            'R_or_t': _number(self.x),
            'computed': [_number(self.computed.real), _number(self.computed.imag)],
            'target': None if self.target is None else [_number(self.target.real), _number(self.target.imag)],
            'abs_err': _number(self.abs_err),
            'rel_err': _number(self.rel_err),
            'provenance': self.provenance,
            'label': self.label,
            'judged': self.judged,
        }

    @staticmethod
    def fromjson(data):
        def pair(value):
            return None if value is None else complex(_unnumber(value[0]), _unnumber(value[1]))
        return Record(data['scenario'], data['n'], data['sigma'], pair(data['lambda']), _unnumber(data['R_or_t']),
                pair(data['computed']), pair(data['target']), _unnumber(data['abs_err']), _unnumber(data['rel_err']),
                data['provenance'], data['label'], data['judged'])

    def __eq__(self, other):
        return isinstance(other, Record) and json.dumps(self.tojson(), sort_keys=True) == json.dumps(other.tojson(), sort_keys=True)

    def __repr__(self):
        return "Record(" + self.scenario + ", " + self.label + ", computed=" + str(self.computed) + ", abs_err=" + str(self.abs_err) + ")"


class Report:
    """The outcome of one scenario: parameters, records, summary and verdict"""

    def __init__(self, scenario, criterion, parameters=None, records=None, summary=None, walltime=0.0, passed=True, informational=False):
        self.scenario = scenario
        self.criterion = criterion
        self.parameters = parameters if parameters is not None else {}
        self.records = records if records is not None else []
        self.summary = summary if summary is not None else {}
        self.walltime = walltime
        self.passed = passed
        self.informational = informational

    @property
    def header(self):
        return "scenario " + self.scenario + " (acceptance criterion " + str(self.criterion) + ")"

    def maxerror(self):
        errors = [ r.error() for r in self.records if r.judged and r.error() is not None ]
        return max(errors) if errors else 0.0

    def tojson(self):
        return {
            'scenario': self.scenario,
            'criterion': self.criterion,
            'parameters': self.parameters,
            'summary': { key: _number(value) if isinstance(value, float) else value for key, value in self.summary.items() },
            'walltime': self.walltime,
            'passed': self.passed,
            'informational': self.informational,
            'records': [ r.tojson() for r in self.records ],
        }

    @staticmethod
    def fromjson(data):
        summary = { key: _unnumber(value) if isinstance(value, str) and value in ('nan','inf','-inf') else value for key, value in data['summary'].items() }
        return Report(data['scenario'], data['criterion'], data['parameters'], [ Record.fromjson(r) for r in data['records'] ],
                summary, data['walltime'], data['passed'], data['informational'])

    def __eq__(self, other):
        return isinstance(other, Report) and json.dumps(self.tojson(), sort_keys=True) == json.dumps(other.tojson(), sort_keys=True)


def emit_csv(reports, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSVCOLUMNS)
    for report in reports:
        for record in report.records:
            writer.writerow(record.csvrow())

def emit_json(reports, stream):
    json.dump({'schema_version': SCHEMA_VERSION, 'reports': [ r.tojson() for r in reports ]}, stream, indent=1, sort_keys=True)
    stream.write("\n")

def emit_report(reports, format='csv', path=None):
    """Write reports as csv or json to path, or return the text when path is None"""
    if isinstance(reports, Report):
        reports = [reports]
    stream = io.StringIO()
    if format == 'csv':
        emit_csv(reports, stream)
    elif format == 'json':
        emit_json(reports, stream)
    else:
        raise ValueError("Unknown output format: " + str(format))
    if path is None or path == '-':
        return stream.getvalue()
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(stream.getvalue())
    return path

def parse_json(text):
    data = json.loads(text)
    if data.get('schema_version') != SCHEMA_VERSION:
        raise ValueError("Unsupported report schema version: " + str(data.get('schema_version')))
    return [ Report.fromjson(r) for r in data['reports'] ]

def parse_csv(text):
    """Rows of a CSV report as dictionaries keyed by column"""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSVCOLUMNS:
        raise ValueError("Unexpected CSV columns: " + str(reader.fieldnames))
    return list(reader)


def output(reports, file=sys.stdout):
    """Console summary of a run"""
    for report in reports:
        print(report.header.upper(), file=file)
        print("=" * len(report.header), file=file)
        print(" Records                                    : ", len(report.records), file=file)
        print(" Judged records                             : ", sum( 1 for r in report.records if r.judged ), file=file)
        print(" Maximal error                              : ", "%.3e" % report.maxerror(), file=file)
        for key, value in sorted(report.summary.items()):
            if isinstance(value, float):
                value = "%.6g" % value
            print(" " + key.ljust(43) + ": ", value, file=file)
        print(" Wall time (s)                              : ", round(report.walltime,2), file=file)
        print(" Verdict                                    : ", "informational" if report.informational else ("PASSED" if report.passed else "FAILED"), file=file)
        print("", file=file)
    print("OVERALL RESULTS", file=file)
    print("=================", file=file)
    print(" Scenarios                                  : ", len(reports), file=file)
    print(" Passed                                     : ", sum( 1 for r in reports if r.passed ), file=file)
    print(" Failed                                     : ", sum( 1 for r in reports if not r.passed ), file=file)
