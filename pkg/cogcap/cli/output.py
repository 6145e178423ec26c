import csv


def format_number(value):
    """
    Return the value with 17 significant digits,
    or an empty field for None.
    """
    return '' if value is None else '%.17g' % value


def write_csv(stream, header, rows, comments=()):
    """
    Write `#` comment lines, the header and the rows.
    """
    for comment in comments:
        stream.write(f'# {comment}\n')
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
