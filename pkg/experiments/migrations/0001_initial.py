# Generated by Django 4.2.8

from django.db import migrations, models
import uuid


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('command', models.CharField(choices=[('resolvent', 'Resolvent'), ('vsum', 'Variational Sum'), ('evolve', 'Evolution'), ('diagnose', 'Diagnostic'), ('sweep', 'Sweep')], max_length=20)),
                ('subkind', models.CharField(blank=True, max_length=30)),
                ('seed', models.IntegerField(default=0)),
                ('status', models.PositiveSmallIntegerField(choices=[(0, 'Success'), (1, 'Operational Error'), (2, 'Finding')], default=0)),
                ('payload_digest', models.CharField(blank=True, help_text='SHA-256 of the deterministic payload', max_length=64)),
                ('report_paths', models.JSONField(blank=True, default=list)),
                ('config', models.JSONField(blank=True, default=dict)),
                ('message', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', 'status'], name='experiments_cmd_status_idx'), models.Index(fields=['payload_digest'], name='experiments_digest_idx')],
            },
        ),
        migrations.CreateModel(
            name='FailedRun',
            fields=[
            ],
            options={
                'verbose_name': 'Failed Run',
                'verbose_name_plural': 'Failed Runs',
                'proxy': True,
                'indexes': [],
                'constraints': [],
            },
            bases=('experiments.experimentrun',),
        ),
        migrations.CreateModel(
            name='FindingRun',
            fields=[
            ],
            options={
                'verbose_name': 'Finding Run',
                'verbose_name_plural': 'Finding Runs',
                'proxy': True,
                'indexes': [],
                'constraints': [],
            },
            bases=('experiments.experimentrun',),
        ),
    ]
