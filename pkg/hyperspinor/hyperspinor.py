#!/usr/bin/env python3
#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

import sys
import os
import datetime
import time
import traceback
import importlib
import inspect
from collections import OrderedDict
from queue import Empty
from multiprocessing import get_context
from glob import glob
import argparse
import psutil
import yaml

from hyperspinor.spinreps import taulabels, sigmalabels, checklabels
from hyperspinor.helpers.common import generator
from hyperspinor.helpers.evaluation import Record, Report, emit_report, output

VERSION = '0.1.0'

DEFAULTCONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'defaults.yml')

_context = get_context('fork')


class ConfigurationError(Exception):
    pass


def parsevalue(value):
    """Convert a command line string to int, float, a list of numbers, or leave it as is"""
    if not isinstance(value, str):
        return value
    if ',' in value:
        return [ parsevalue(v) for v in value.split(',') if v ]
    if value.lstrip('-').isnumeric():
        return int(value)
    try:
        return float(value)
    except ValueError:
        return value

def parseassignments(assignments):
    result = {}
    for assignment in assignments or []:
        if '=' not in assignment:
            raise ConfigurationError("Expected key=value, got " + assignment)
        key, value = assignment.split('=', 1)
        result[key.strip()] = parsevalue(value.strip())
    return result

def loadconfig(configfile):
    config = yaml.full_load(open(configfile,'r',encoding='utf-8').read())
    if not isinstance(config, dict):
        raise ConfigurationError("Configuration " + configfile + " is not a mapping")
    if 'inherit' in config:
        inherit = config.pop('inherit')
        if not os.path.isabs(inherit):
            inherit = os.path.join(os.path.dirname(os.path.abspath(configfile)), inherit)
        baseconfig = loadconfig(inherit)
        config = mergeconfig(baseconfig, config)
    return config

def mergeconfig(baseconfig, config):
    """Merge config over baseconfig; scenario entries with equal ids are updated, new ones appended"""
    merged = dict(baseconfig)
    scenarios = [ dict(s) for s in baseconfig.get('scenarios', []) ]
    for spec in config.get('scenarios', []):
        if 'id' not in spec:
            raise ConfigurationError("Missing ID in scenario entry")
        for existing in scenarios:
            if existing.get('id') == spec['id']:
                existing.update(spec)
                break
        else:
            scenarios.append(dict(spec))
    merged.update({ key: value for key, value in config.items() if key != 'scenarios' })
    merged['scenarios'] = scenarios
    return merged


def runpoint(experimenter, scenario_id, index, point, log):
    """Run one point of a scenario with its own generator; returns (records or None, duration)"""
    scenario = experimenter.scenarios[scenario_id]
    rng = generator(experimenter.settings['seed'], scenario.number, index)
    begintime = time.time()
    try:
        records = scenario.runpoint(point, rng)
    except Exception as e: #pylint: disable=broad-except
        log("***ERROR*** Point " + str(index) + " of scenario " + scenario_id + " failed: " + type(e).__name__ + ": " + str(e))
        exc_type, exc_value, exc_traceback = sys.exc_info() #pylint: disable=unused-variable
        traceback.print_tb(exc_traceback, limit=50, file=sys.stderr)
        records = None
    return records, round(time.time() - begintime,4)


class ScenarioThread(_context.Process):
    def __init__(self, experimenter, inputqueue, outputqueue):
        self.experimenter = experimenter
        self.inputqueue = inputqueue
        self.outputqueue = outputqueue
        self._stop = False
        super().__init__()

    def run(self):
        self.experimenter.log("[" + str(self.pid) + "] Start of thread")
        while not self._stop:
            try:
                scenario_id, index, point = self.inputqueue.get(True,self.experimenter.settings['timeout'])
            except Empty:
                self.experimenter.log("[" + str(self.pid) + "] Input queue timed out")
                self._stop = True
                break
            self.inputqueue.task_done()
            if scenario_id is None: #one sentinel per thread
                self._stop = True
                break
            log = lambda x: self.experimenter.scenarios[scenario_id].log("[" + str(self.pid) + "] " + x) #pylint: disable=cell-var-from-loop
            records, duration = runpoint(self.experimenter, scenario_id, index, point, log)
            self.outputqueue.put( (scenario_id, index, records, duration) )
        self.experimenter.log("[" + str(self.pid) + "] End of thread")

    def stop(self):
        self._stop = True


class Experimenter:
    """Loads the configuration, instantiates the selected scenarios and runs them

    Settings:
    * ``config``     - YAML configuration merged over the built-in defaults (optional)
    * ``select``     - list of scenario ids to run (default: all enabled scenarios)
    * ``parameters`` - parameter overrides applied to every selected scenario
    * ``threads``    - number of worker processes (default: 1, in-process)
    * ``seed``       - seed of the generator streams (default: 0)
    * ``timeout``    - seconds a worker or the collector waits on a queue (default: 3600)
    * ``out``        - output file, ``-`` for standard output (default: -)
    * ``format``     - csv or json (default: csv)
    """

    def __init__(self, **settings):
        self.settings = settings
        self.scenarios = OrderedDict()
        self.verifysettings()

    def verifysettings(self):
        if 'scenarios' not in self.settings:
            #the configuration is not parsed yet, parseconfig reinvokes verifysettings
            self.parseconfig(self.settings.pop('config', None))
            return

        if 'id' not in self.settings:
            raise ConfigurationError("No ID specified")

        if 'logfunction' not in self.settings:
            self.settings['logfunction'] = lambda x: print(datetime.datetime.now().strftime("%H:%M:%S.%f") + " " + x,file=sys.stderr)
        self.log = self.settings['logfunction']

        self.settings['timeout'] = int(self.settings.get('timeout', 3600))
        self.settings['threads'] = int(self.settings.get('threads', 1))
        if self.settings['threads'] < 1:
            raise ConfigurationError("threads must be at least 1")
        if 'HYPERSPINOR_THREADS' in os.environ:
            try:
                self.settings['threads'] = min(self.settings['threads'], int(os.environ['HYPERSPINOR_THREADS']))
            except ValueError:
                raise ConfigurationError("HYPERSPINOR_THREADS must be an integer")
        self.settings['threads'] = max(1, min(self.settings['threads'], psutil.cpu_count() or 1))

        seed = self.settings.get('seed', 0)
        if not isinstance(seed, int) or seed < 0 or seed >= 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer, got " + str(seed))
        self.settings['seed'] = seed

        if 'out' not in self.settings or self.settings['out'] is None:
            self.settings['out'] = '-'
        if 'format' not in self.settings:
            self.settings['format'] = 'csv'
        if self.settings['format'] not in ('csv','json'):
            raise ConfigurationError("format must be csv or json, got " + str(self.settings['format']))

    def parseconfig(self, configfile):
        self.configfile = configfile #pylint: disable=attribute-defined-outside-init
        config = loadconfig(DEFAULTCONFIG)
        if configfile:
            if not os.path.exists(configfile):
                raise ConfigurationError("Configuration file not found: " + configfile)
            config = mergeconfig(config, loadconfig(configfile))

        if not config.get('scenarios'):
            raise ConfigurationError("No scenarios specified")

        scenariospecs = config.pop('scenarios')
        select = self.settings.pop('select', None)
        parameters = self.settings.pop('parameters', {})
        config.update(self.settings) #explicit settings win over the files
        config['scenarios'] = scenariospecs
        self.settings = config
        self.verifysettings()

        known = [ spec.get('id') for spec in scenariospecs ]
        if select:
            unknown = [ s for s in select if s not in known ]
            if unknown:
                raise ConfigurationError("Unknown scenario: " + ", ".join(unknown) + " (available: " + ", ".join(known) + ")")

        for number, scenariospec in enumerate(scenariospecs):
            if 'id' not in scenariospec:
                raise ConfigurationError("Missing ID in scenario entry")
            if select:
                if scenariospec['id'] not in select:
                    continue
            elif 'enabled' in scenariospec and not scenariospec['enabled']:
                continue
            if 'scenario' not in scenariospec:
                raise ConfigurationError("Scenario " + scenariospec['id'] + " does not name its class")
            scenariospec = dict(scenariospec)
            scenariospec.update(parameters)
            pymodule = '.'.join(scenariospec['scenario'].split('.')[:-1])
            scenarioclass = scenariospec['scenario'].split('.')[-1]
            try:
                ScenarioClass = getattr(importlib.import_module(pymodule), scenarioclass)
            except (ImportError, AttributeError, ValueError):
                raise ConfigurationError("Scenario class not found: " + scenariospec['scenario'])
            self.append(ScenarioClass(self, number, **scenariospec))

    def append(self, scenario):
        if scenario.id in self.scenarios:
            raise ConfigurationError("Duplicate scenario id: " + scenario.id)
        self.scenarios[scenario.id] = scenario

    def __len__(self):
        return len(self.scenarios)

    def __getitem__(self, scenario_id):
        return self.scenarios[scenario_id]

    def __iter__(self):
        for scenario in self.scenarios.values():
            yield scenario


    def run(self):
        """Run all loaded scenarios, returns the list of reports"""
        begintime = time.time()
        jobs = []
        for scenario in self:
            points = scenario.points()
            scenario.log(str(len(points)) + " points")
            jobs += [ (scenario.id, index, point) for index, point in enumerate(points) ]

        results = { scenario.id: {} for scenario in self }
        durations = { scenario.id: 0.0 for scenario in self }
        threadcount = min(self.settings['threads'], len(jobs))
        if threadcount <= 1:
            self.log("Running " + str(len(jobs)) + " points in-process")
            for scenario_id, index, point in jobs:
                records, duration = runpoint(self, scenario_id, index, point, self.scenarios[scenario_id].log)
                results[scenario_id][index] = records
                durations[scenario_id] += duration
        else:
            inputqueue = _context.JoinableQueue()
            outputqueue = _context.Queue()
            for job in jobs:
                inputqueue.put(job)
            threads = []
            for _ in range(threadcount):
                inputqueue.put( (None,None,None) )
                threads.append(ScenarioThread(self, inputqueue, outputqueue))
            self.log(str(len(threads)) + " threads ready.")
            for thread in threads:
                thread.start()
            self.log(str(len(threads)) + " threads started.")
            sys.stderr.flush()
            inputqueue.join()
            for _ in range(len(jobs)):
                try:
                    scenario_id, index, records, duration = outputqueue.get(True, self.settings['timeout'])
                except Empty:
                    self.log("***ERROR*** Output queue timed out, missing points count as failures")
                    break
                results[scenario_id][index] = records
                durations[scenario_id] += duration
            for thread in threads:
                thread.stop()
                thread.join(self.settings['timeout'])

        reports = []
        for scenario in self:
            reports.append(scenario.report(results[scenario.id], len([ j for j in jobs if j[0] == scenario.id ]), durations[scenario.id]))
        duration = time.time() - begintime
        self.log("Processing done (real total " + str(round(duration,2)) + "s, virtual " + str(round(sum(durations.values()),2)) + "s)")
        return reports

    def main(self):
        self.log("HyperSpinor v" + VERSION + " using " + str(self.settings['id']) + " (seed " + str(self.settings['seed']) + ")")
        for scenario in self:
            self.log("Loaded scenario " + scenario.id + " [" + type(scenario).__name__ + "]")
        reports = self.run()
        tostdout = self.settings['out'] == '-'
        text = emit_report(reports, self.settings['format'], None if tostdout else self.settings['out'])
        if tostdout:
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            self.log("Report written to " + self.settings['out'])
        output(reports, file=sys.stderr if tostdout else sys.stdout)
        failed = [ r.scenario for r in reports if not r.passed ]
        if failed:
            self.log("Failed scenarios: " + ", ".join(failed))
            return 1
        return 0


class Scenario:
    """Base class of verification scenarios. A scenario splits its work into
    independent points, evaluates each with its own generator and judges the
    merged records.

    Settings common to all scenarios:
    * ``id``         - the scenario name used on the command line
    * ``tolerance``  - a number for all judged quantities, or a mapping from record label to tolerance
    * ``enabled``    - set to false to skip the scenario when running all
    """

    CRITERION = None
    INFORMATIONAL = False
    TOLERANCES = {}

    def __init__(self, parent, number=0, **settings):
        self.parent = parent
        self.number = number
        self.settings = settings
        self.verifysettings()

    def verifysettings(self):
        if 'id' not in self.settings:
            raise ConfigurationError("Scenario must have an ID!")
        self.id = self.settings['id']
        for c in self.id:
            if c in ('.',' ','/',','):
                raise ConfigurationError("Invalid character in scenario ID (no spaces, commas, periods and slashes allowed): " + self.id)

        if 'logfunction' not in self.settings:
            self.settings['logfunction'] = lambda x: print(datetime.datetime.now().strftime("%H:%M:%S.%f") + " [" + self.id + "] " + x,file=sys.stderr)
        self.log = self.settings['logfunction']

        self.tolerances = dict(self.TOLERANCES)
        tolerance = self.settings.get('tolerance')
        if isinstance(tolerance, dict):
            self.tolerances.update({ key: float(value) for key, value in tolerance.items() })
        elif tolerance is not None:
            self.tolerances = { key: float(tolerance) for key in self.tolerances }
            self.tolerances[None] = float(tolerance)

    #parameter helpers

    def getlist(self, key, default=None, cast=float):
        value = self.settings.get(key, default)
        if value is None:
            return None
        if isinstance(value, str):
            value = parsevalue(value)
        if not isinstance(value, (list, tuple)):
            value = [value]
        try:
            return [ cast(v) for v in value ]
        except (TypeError, ValueError):
            raise ConfigurationError("Setting " + key + " of scenario " + self.id + " must be a list of numbers, got " + str(value))

    def getnumber(self, key, default, cast=float):
        value = self.settings.get(key, default)
        if isinstance(value, (list, tuple)):
            raise ConfigurationError("Setting " + key + " of scenario " + self.id + " expects a single value")
        try:
            return cast(value)
        except (TypeError, ValueError):
            raise ConfigurationError("Setting " + key + " of scenario " + self.id + " must be a number, got " + str(value))

    def lambdas(self, default):
        lams = self.getlist('lambda', default)
        if any( l <= 0 for l in lams ):
            raise ConfigurationError("Spectral parameters must be positive, got " + str(lams))
        return lams

    def ladder(self, default):
        radii = self.getlist('radii', default)
        if 'rmax' in self.settings and self.settings['rmax'] is not None:
            rmax = self.getnumber('rmax', None)
            radii = [ r for r in radii if r < rmax ] + [rmax]
        if any( r <= 0 for r in radii ) or any( b <= a for a, b in zip(radii[:-1], radii[1:]) ):
            raise ConfigurationError("R-ladder must be positive and increasing, got " + str(radii))
        return radii

    def dimensions(self, default):
        return self.getlist('n', default, int)

    def labels(self, n):
        """(tau, [sigma, ...]) for dimension n; explicit labels are checked for parity"""
        tau = self.settings.get('tau')
        sigma = self.settings.get('sigma')
        if tau is None:
            tau = taulabels(n)[0]
        if sigma is None or sigma == 'all':
            sigmas = list(sigmalabels(n))
        else:
            sigmas = [sigma]
        for s in sigmas:
            checklabels(n, tau, s)
        return tau, sigmas

    def checkparity(self, dimensions):
        for n in dimensions:
            self.labels(n)

    def gridorder(self, n, defaults):
        """Angular order for dimension n: the ``grid`` setting (a number or a mapping by n) or the default"""
        grid = self.settings.get('grid')
        if grid is None:
            return defaults[n]
        if isinstance(grid, dict):
            return int(grid.get(n, defaults[n]))
        return int(grid)

    #interface

    def points(self):
        """The list of independent work items (picklable)"""
        raise NotImplementedError

    def runpoint(self, point, rng):
        """Evaluate one point, returns a list of Record"""
        raise NotImplementedError

    def judge(self, records):
        """Returns (passed, summary) for the merged records"""
        judged = [ r for r in records if r.judged and r.error() is not None ]
        passed = True
        worst = {}
        for r in judged:
            tolerance = self.tolerances.get(r.label, self.tolerances.get(None))
            if tolerance is None:
                raise ConfigurationError("No tolerance for " + r.label + " in scenario " + self.id)
            worst[r.label] = max(worst.get(r.label, 0.0), r.error())
            if not r.error() <= tolerance:
                passed = False
        summary = { 'max_' + label: value for label, value in worst.items() if label }
        return passed, summary

    def parameters(self):
        return { key: value for key, value in self.settings.items() if key not in ('logfunction',) }

    def report(self, results, count, walltime):
        records = []
        failures = 0
        for index in range(count):
            if results.get(index) is None:
                failures += 1
            else:
                records += results[index]
        passed, summary = self.judge(records) if records or not failures else (False, {})
        if failures:
            summary['failed_points'] = failures
            passed = False
        if self.INFORMATIONAL:
            passed = not failures
        report = Report(self.id, self.CRITERION, self.parameters(), records, summary, round(walltime,4), passed, self.INFORMATIONAL)
        self.log(("PASSED" if passed else "FAILED") + ", maximal error " + "%.3e" % report.maxerror() + " (" + str(round(walltime,4)) + "s)")
        return report

    def record(self, n, sigma, lam, x, computed, **kwargs):
        return Record(self.id, n, sigma, lam, x, computed, **kwargs)


def helpscenarios():
    print("HyperSpinor Scenarios and Settings")
    print("=================================")
    print()
    print(Scenario.__doc__)
    print()
    import hyperspinor.scenarios #pylint: disable=redefined-outer-name
    for scenariofile in sorted(glob(hyperspinor.scenarios.__path__[0] + "/*.py")):
        modulename = os.path.basename(scenariofile).replace('.py','')
        if modulename == '__init__':
            continue
        module = importlib.import_module('hyperspinor.scenarios.' + modulename)
        for name in dir(module):
            C = getattr(module, name)
            if inspect.isclass(C) and issubclass(C, Scenario) and C is not Scenario and C.__module__ == module.__name__ and C.__doc__:
                print("hyperspinor.scenarios." + modulename + "." + C.__name__ + " (acceptance criterion " + str(C.CRITERION) + ")")
                print("----------------------------------------------------------------------")
                print(C.__doc__)
                print()


def main():
    if len(sys.argv) > 1 and sys.argv[1] == "--helpscenarios":
        helpscenarios()
        sys.exit(0)
    parser = argparse.ArgumentParser(description="HyperSpinor verifies harmonic analysis on the spinor bundle over hyperbolic space numerically. To see all scenarios and their settings: hyperspinor --helpscenarios", formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('scenarios', help="Scenarios to run (comma-separated list of ids, or 'all')")
    parser.add_argument('--config', help="YAML configuration merged over the built-in defaults", required=False)
    parser.add_argument('--n', type=int, help="Dimension of hyperbolic space", required=False)
    parser.add_argument('--tau', choices=('plus','minus','full'), help="Spin representation of K", required=False)
    parser.add_argument('--sigma', choices=('plus','minus','full'), help="Representation of M in tau", required=False)
    parser.add_argument('--lambda', dest='lam', help="Spectral parameters (comma-separated list)", required=False)
    parser.add_argument('--rmax', type=float, help="Largest radius of the R-ladder", required=False)
    parser.add_argument('--grid', type=int, help="Angular quadrature order", required=False)
    parser.add_argument('--seed', type=int, help="Seed (unsigned 64-bit)", required=False)
    parser.add_argument('--threads', type=int, help="Number of worker processes", required=False)
    parser.add_argument('--out', help="Output file (- for standard output)", required=False)
    parser.add_argument('--format', choices=('csv','json'), help="Output format", required=False)
    parser.add_argument('-s',dest='settings', help="Setting overrides, specify as -s setting=value. This option can be issued multiple times.", required=False, action="append")
    parser.add_argument('-p',dest='parameters', help="Scenario parameters, specify as -p parameter=value. This option can be issued multiple times", required=False, action="append")
    args = parser.parse_args()

    try:
        settings = parseassignments(args.settings)
        parameters = parseassignments(args.parameters)
        for key in ('seed','threads','out','format'):
            if getattr(args, key) is not None:
                settings[key] = getattr(args, key)
        if args.n is not None:
            parameters['n'] = args.n
            #labels from the files belong to their own parity
            parameters.setdefault('tau', None)
            parameters.setdefault('sigma', None)
        for key, value in (('tau', args.tau), ('sigma', args.sigma), ('rmax', args.rmax), ('grid', args.grid)):
            if value is not None:
                parameters[key] = value
        if args.lam is not None:
            parameters['lambda'] = [ float(v) for v in args.lam.split(',') if v ]
        select = None if args.scenarios == 'all' else [ s for s in args.scenarios.split(',') if s ]
        experimenter = Experimenter(config=args.config, select=select, parameters=parameters, **settings)
    except (ConfigurationError, ValueError, yaml.YAMLError) as e:
        print("Configuration error: " + str(e), file=sys.stderr)
        sys.exit(2)
    sys.exit(experimenter.main())


if __name__ == '__main__':
    main()
