from .report import TOOL, VERSION, build_report, dump_report, load_schema, to_jsonable, write_report
