import logging.handlers
import sys

_command = None
_installed = []


def set_command(name):
    """Record the command being run, so that log records can show it"""
    global _command
    _command = name


class CommandFormatter(logging.Formatter):
    def format(self, record):
        record.command = _command if _command else ''
        return super().format(record)


formatter = CommandFormatter(
    '--------------------------------\n'
    '[%(asctime)s] %(levelname)s (%(module)s) :\n'
    '%(command)s\n%(message)s\n'
)

diagnostic_formatter = logging.Formatter('%(levelname)s: %(message)s')


def init_logging(config):
    root = logging.getLogger()

    # main() can run more than once in a process (tests)
    for handler in _installed:
        root.removeHandler(handler)
        handler.close()
    _installed.clear()

    levels = [int(config['DIAGNOSTIC_LEVEL'])]

    if config['LOGPATH']:
        handler = logging.handlers.RotatingFileHandler(config['LOGPATH'], maxBytes=1024 * 1024)
        handler.setLevel(int(config['LOGLEVEL']))
        handler.setFormatter(formatter)
        root.addHandler(handler)
        _installed.append(handler)
        levels.append(int(config['LOGLEVEL']))

    stream = logging.StreamHandler(sys.stderr)
    stream.setLevel(int(config['DIAGNOSTIC_LEVEL']))
    stream.setFormatter(diagnostic_formatter)
    root.addHandler(stream)
    _installed.append(stream)

    root.setLevel(min(levels))
