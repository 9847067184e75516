from reportlab.lib import colors
from reportlab.lib.pagesizes import A4, landscape
from reportlab.lib.styles import getSampleStyleSheet
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from src.config.consts import SUMMARY_COLUMNS
from src.errors import StorageError
from src.models import SummaryReport


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


class ReportPdf:
    """Exporta la tabla de un SummaryReport a PDF (solo datos tabulares, sin gráficos)."""

    def __init__(self, report: SummaryReport, filepath: str):
        self.report = report
        self.filepath = filepath

    def _summary_table(self) -> Table:
        table_data = [SUMMARY_COLUMNS] + [[_cell(row.get(col)) for col in SUMMARY_COLUMNS] for row in self.report.rows]
        table = Table(table_data, repeatRows=1)
        table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#262433')),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 7),
            ('BOTTOMPADDING', (0, 0), (-1, 0), 8),
            ('BACKGROUND', (0, 1), (-1, -1), colors.HexColor('#F3F4F6')),
            ('GRID', (0, 0), (-1, -1), 0.5, colors.black),
            ('ALIGN', (3, 1), (-1, -1), 'RIGHT'),
        ]))
        return table

    def _scaling_table(self) -> Table:
        table_data = [["problem", "algo", "n", "2n", "T(2n)/T(n)", "2 ln(2n)/ln n"]]
        for study in self.report.scaling:
            for step in study["doubling"]:
                table_data.append([
                    study["problem"], study["algo"], str(step["n"]), str(step["next_n"]),
                    _cell(step["ratio"]), _cell(step["expected"]),
                ])
        table = Table(table_data, repeatRows=1)
        table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#3B82F6')),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('GRID', (0, 0), (-1, -1), 0.5, colors.black),
            ('ALIGN', (2, 1), (-1, -1), 'RIGHT'),
        ]))
        return table

    def generate_pdf(self) -> str:
        doc = SimpleDocTemplate(self.filepath, pagesize=landscape(A4))
        styles = getSampleStyleSheet()
        story = [
            Paragraph("<b>Resumen de experimentos</b>", styles['Title']),
            Paragraph(f"Fuente: {self.report.source}", styles['Normal']),
        ]
        for key in sorted(self.report.header):
            story.append(Paragraph(f"{key}: {self.report.header[key]}", styles['Normal']))
        story.append(Spacer(1, 14))

        if self.report.rows:
            story.append(self._summary_table())
        else:
            story.append(Paragraph("El archivo no tiene corridas.", styles['Normal']))

        if any(study["doubling"] for study in self.report.scaling):
            story.append(Spacer(1, 14))
            story.append(Paragraph("<b>Escalamiento</b>", styles['Heading2']))
            story.append(self._scaling_table())

        try:
            doc.build(story)
        except OSError as e:
            raise StorageError(f"Error al generar el PDF: {e}")
        return self.filepath
