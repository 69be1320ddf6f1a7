###############################
# Report verdicts and columns #
###############################

class __Verdicts:
    PASS = 'pass'
    FAIL = 'fail'
    INCONCLUSIVE = 'inconclusive'

    def __iter__(self):
        return iter((self.PASS, self.FAIL, self.INCONCLUSIVE))


VERDICTS = __Verdicts()

OUTPUT_FORMATS = ('json', 'tsv')

# Column order of the TSV report frame; parameters and witnesses are JSON
# encoded in their cells.
REPORT_COLUMNS = [
    'schema',
    'check_name',
    'verdict',
    'parameters',
    'witnesses',
    'runtime_ms',
    'statement',
]

# Cap on the number of witnesses serialized for a single failing check.
MAX_WITNESSES = 20
