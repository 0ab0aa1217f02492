# coding=utf-8
import logging

from colorama import Fore, Style
from tqdm import tqdm

from .util import atomic_write, utf8print

log = logging.getLogger(__name__)

# Progress bars are only shown when there are more steps than this
PROGRESS_THRESHOLD = 50


class Job(object):
    """
    Runs one task: writes its artifact (atomically, or to stdout when no output
    file is given), prints the summary line and returns the exit status.
    """

    def __init__(self, task, cache=None, seed=0, out=None, show_progress=True, cache_time=86400):
        self.task = task
        self.cache = cache
        self.seed = seed
        self.out = out
        self.show_progress = show_progress
        self.cache_time = cache_time
        self.status = None
        self.summary = None

    def progress(self, iterable, total, desc):
        if self.show_progress and total > PROGRESS_THRESHOLD:
            return tqdm(iterable, total=total, desc=desc)
        return iterable

    def artifact(self, output):
        if self.task.randomized:
            return '# seed=%d\n' % self.seed + output
        return output

    def start(self):
        log.debug('Starting %s', self.task)
        result = self.task.run(self)
        self.status = result.status
        self.summary = result.summary

        if result.output is not None:
            text = self.artifact(result.output)
            if self.out is not None:
                atomic_write(self.out, text)
                log.info('Wrote %s', self.out)
            else:
                utf8print(text.rstrip('\n'))

        colour = Fore.GREEN if result.status == 0 else Fore.RED
        utf8print('{}{}{}'.format(colour, result.summary, Style.RESET_ALL))
        return result.status
